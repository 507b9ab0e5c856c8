#include "qmoduli/rep_element.hpp"

#include <stdexcept>

namespace qmoduli {

namespace {

void check_level(const RepElement& v) {
  if (v.k < 0 || static_cast<int>(v.coeffs.size()) != v.k + 1)
    throw std::invalid_argument("RepElement: coefficient count must be k+1");
}

Rational binom(int n, int r) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, r);
  return Rational(b);
}

}  // namespace

RepElement RepElement::monomial(int level, int a, GaussianRational c) {
  if (a < 0 || a > level) throw std::invalid_argument("RepElement: monomial index out of range");
  RepElement v(level);
  v.coeffs[a] = std::move(c);
  return v;
}

bool RepElement::is_zero() const {
  for (const auto& c : coeffs)
    if (!c.is_zero()) return false;
  return true;
}

RepElement RepElement::operator+(const RepElement& o) const {
  if (k != o.k) throw std::invalid_argument("RepElement: level mismatch");
  RepElement r(k);
  for (int a = 0; a <= k; ++a) r.coeffs[a] = coeffs[a] + o.coeffs[a];
  return r;
}

RepElement RepElement::operator-(const RepElement& o) const {
  if (k != o.k) throw std::invalid_argument("RepElement: level mismatch");
  RepElement r(k);
  for (int a = 0; a <= k; ++a) r.coeffs[a] = coeffs[a] - o.coeffs[a];
  return r;
}

RepElement RepElement::scaled(const GaussianRational& c) const {
  RepElement r(k);
  for (int a = 0; a <= k; ++a) r.coeffs[a] = coeffs[a] * c;
  return r;
}

std::vector<int> weights(int k) {
  if (k < 0) throw std::invalid_argument("weights: k must be >= 0");
  std::vector<int> w(k + 1);
  for (int a = 0; a <= k; ++a) w[a] = 2 * a - k;
  return w;
}

RepElement act_lie(LieGenerator g, const RepElement& v) {
  check_level(v);
  const int k = v.k;
  const GaussianRational I = GaussianRational::unit_i();
  RepElement r(k);
  auto raise = [&](RepElement& out, const RepElement& in) {  // E
    for (int a = 0; a < k; ++a) out.coeffs[a + 1] += in.coeffs[a] * GaussianRational(Rational(k - a));
  };
  auto lower = [&](RepElement& out, const RepElement& in) {  // F
    for (int a = 1; a <= k; ++a) out.coeffs[a - 1] += in.coeffs[a] * GaussianRational(Rational(a));
  };
  auto cartan = [&](RepElement& out, const RepElement& in) {  // H
    for (int a = 0; a <= k; ++a) out.coeffs[a] += in.coeffs[a] * GaussianRational(Rational(2 * a - k));
  };
  switch (g) {
    case LieGenerator::E:
      raise(r, v);
      break;
    case LieGenerator::F:
      lower(r, v);
      break;
    case LieGenerator::H:
      cartan(r, v);
      break;
    case LieGenerator::U1: {  // iH
      RepElement t(k);
      cartan(t, v);
      r = t.scaled(I);
      break;
    }
    case LieGenerator::U2: {  // E - F
      raise(r, v);
      RepElement t(k);
      lower(t, v);
      r = r - t;
      break;
    }
    case LieGenerator::U3: {  // i(E + F)
      RepElement t(k);
      raise(t, v);
      lower(t, v);
      r = t.scaled(I);
      break;
    }
  }
  return r;
}

GaussianRational inner(const RepElement& u, const RepElement& v) {
  check_level(u);
  check_level(v);
  if (u.k != v.k) throw std::invalid_argument("inner: level mismatch");
  GaussianRational s;
  for (int a = 0; a <= u.k; ++a) {
    if (u.coeffs[a].is_zero() || v.coeffs[a].is_zero()) continue;
    GaussianRational t = u.coeffs[a] * v.coeffs[a].conj();
    Rational c(1);
    c /= binom(u.k, a);
    s += GaussianRational(t.re * c, t.im * c);
  }
  return s;
}

RepElement StructureMap::apply(const RepElement& v) const {
  check_level(v);
  if (v.k != k) throw std::invalid_argument("StructureMap: level mismatch");
  RepElement r(k);
  for (int a = 0; a <= k; ++a) {
    const int b = k - a;  // sigma(x^a y^b) = (-1)^b x^b y^a, antilinear
    GaussianRational c = v.coeffs[a].conj();
    if (b % 2 != 0) c = -c;
    r.coeffs[b] += c;
  }
  return r;
}

StructureMap structure_map(int k) {
  if (k < 0) throw std::invalid_argument("structure_map: k must be >= 0");
  return StructureMap{k};
}

std::vector<RepElement> real_form_basis(int k) {
  if (k < 0 || k % 2 != 0)
    throw std::invalid_argument("real_form_basis: real form requires even k");
  const StructureMap sig = structure_map(k);
  const GaussianRational I = GaussianRational::unit_i();
  std::vector<RepElement> out;
  for (int a = 0; a <= k; ++a) {
    RepElement m = RepElement::monomial(k, a);
    RepElement sm = sig.apply(m);
    RepElement plus = m + sm;                     // sigma-fixed
    RepElement minus = (m - sm).scaled(I);        // sigma-fixed as well
    for (RepElement* cand : {&plus, &minus}) {
      if (cand->is_zero()) continue;
      // normalize to primitive rational form over the 2(k+1) real coordinates
      RatVec rc = realify(*cand);
      primitivize(rc);
      RepElement prim = unrealify(k, rc);
      bool dup = false;
      for (const auto& have : out) {
        if (have == prim) dup = true;
      }
      if (!dup) out.push_back(std::move(prim));
    }
  }
  if (static_cast<int>(out.size()) != k + 1)
    throw std::logic_error("real_form_basis: expected k+1 independent fixed vectors");
  return out;
}

int real_dim(int k) { return 2 * (k + 1); }

RatVec realify(const RepElement& v) {
  check_level(v);
  const int n = v.k + 1;
  RatVec r(2 * n, Rational(0));
  for (int a = 0; a < n; ++a) {
    r[a] = v.coeffs[a].re;
    r[n + a] = v.coeffs[a].im;
  }
  return r;
}

RepElement unrealify(int k, const RatVec& v) {
  const int n = k + 1;
  if (static_cast<int>(v.size()) != 2 * n) throw std::invalid_argument("unrealify: size mismatch");
  RepElement r(k);
  for (int a = 0; a < n; ++a) r.coeffs[a] = GaussianRational(v[a], v[n + a]);
  return r;
}

RatVec gram_diagonal(int k) {
  const int n = k + 1;
  RatVec g(2 * n);
  for (int a = 0; a < n; ++a) {
    Rational c(1);
    c /= binom(k, a);
    g[a] = c;
    g[n + a] = c;
  }
  return g;
}

RatMat j_matrix(int k) {
  const int n = k + 1;
  RatMat J(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    J(n + a, a) = 1;   // m_a -> J m_a
    J(a, n + a) = -1;  // J m_a -> -m_a
  }
  return J;
}

RatMat sigma_matrix(int k) {
  const int n = k + 1;
  RatMat S(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    const int b = k - a;
    const int sign = (b % 2 == 0) ? 1 : -1;
    // sigma(m_a) = sign * m_b, sigma(J m_a) = -sign * J m_b (antilinearity)
    S(b, a) = sign;
    S(n + b, n + a) = -sign;
  }
  return S;
}

RatMat realify_complex_matrix(const std::vector<CVec>& m) {
  const int n = static_cast<int>(m.size());
  RatMat r(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n)
      throw std::invalid_argument("realify_complex_matrix: not square");
    for (int j = 0; j < n; ++j) {
      r(i, j) = m[i][j].re;
      r(n + i, n + j) = m[i][j].re;
      r(n + i, j) = m[i][j].im;
      r(i, n + j) = -m[i][j].im;
    }
  }
  return r;
}

RatMat realified_generator(LieGenerator g, int k) {
  const int n = k + 1;
  std::vector<CVec> cm(n, CVec(n));
  for (int a = 0; a < n; ++a) {
    RepElement img = act_lie(g, RepElement::monomial(k, a));
    for (int b = 0; b < n; ++b) cm[b][a] = img.coeffs[b];
  }
  return realify_complex_matrix(cm);
}

}  // namespace qmoduli
