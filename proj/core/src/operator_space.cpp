#include "qmoduli/operator_space.hpp"

#include <stdexcept>

namespace qmoduli {

namespace {

bool gram_symmetric(int k, const RatMat& m) {
  const RatVec g = gram_diagonal(k);
  const int d = real_dim(k);
  if (m.rows != d || m.cols != d) return false;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      if (g[i] * m(i, j) != g[j] * m(j, i)) return false;
    }
  return true;
}

std::string end_ambient(int k) { return "End(W_R) k=" + std::to_string(k); }
std::string wr_ambient(int k) { return "W_R k=" + std::to_string(k); }

}  // namespace

SymOperator::SymOperator(int level, RatMat m) : k(level), mat(std::move(m)) {
  if (!gram_symmetric(k, mat))
    throw std::invalid_argument("SymOperator: matrix is not symmetric for the invariant product");
}

SymOperator SymOperator::identity(int level) {
  return SymOperator(level, RatMat::identity(real_dim(level)));
}

SymOperator SymOperator::sigma(int level) { return SymOperator(level, sigma_matrix(level)); }

SymOperator SymOperator::j_sigma(int level) {
  return SymOperator(level, j_matrix(level) * sigma_matrix(level));
}

Rational trace_form(const SymOperator& a, const SymOperator& b) {
  return trace_product(a.mat, b.mat);
}

SymOperator herm_pair(const RepElement& u, const RepElement& v) {
  if (u.k != v.k) throw std::invalid_argument("herm_pair: level mismatch");
  const int k = u.k;
  const int n = k + 1;
  std::vector<CVec> m(n, CVec(n));
  const Rational half(1, 2);
  for (int a = 0; a < n; ++a) {
    // column a: H(u,v) m_a = 1/2 ( (m_a, v) u + (m_a, u) v )
    GaussianRational cv = inner(RepElement::monomial(k, a), v);
    GaussianRational cu = inner(RepElement::monomial(k, a), u);
    for (int b = 0; b < n; ++b) {
      GaussianRational t = cv * u.coeffs[b] + cu * v.coeffs[b];
      m[b][a] = GaussianRational(t.re * half, t.im * half);
    }
  }
  return SymOperator(k, realify_complex_matrix(m));
}

SymOperator sym_pair(int k, const RatVec& u, const RatVec& v) {
  const int d = real_dim(k);
  if (static_cast<int>(u.size()) != d || static_cast<int>(v.size()) != d)
    throw std::invalid_argument("sym_pair: dimension mismatch");
  const RatVec g = gram_diagonal(k);
  RatMat m(d, d);
  const Rational half(1, 2);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      // S(u,v) e_j = 1/2 ( <e_j, v> u + <e_j, u> v ), <e_j, w> = g_j w_j
      m(i, j) = half * g[j] * (v[j] * u[i] + u[j] * v[i]);
    }
  return SymOperator(k, std::move(m));
}

SymOperator sym_pair(const RepElement& u, const RepElement& v) {
  if (u.k != v.k) throw std::invalid_argument("sym_pair: level mismatch");
  return sym_pair(u.k, realify(u), realify(v));
}

Subspace sym_operator_space(int k) {
  const int d = real_dim(k);
  const RatVec g = gram_diagonal(k);
  // Constraints g_i A_ij = g_j A_ji; kernel over the d^2 matrix entries.
  RatMat constraints(d * (d - 1) / 2, d * d);
  int row = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      constraints(row, i * d + j) = g[i];
      constraints(row, j * d + i) = -g[j];
      ++row;
    }
  EchelonBasis basis(d * d);
  for (auto& v : kernel_of(constraints)) basis.adjoin(std::move(v));
  return Subspace(end_ambient(k) + " sym", std::move(basis));
}

std::array<Subspace, 4> split_S(int k) {
  const int d = real_dim(k);
  const RatMat J = j_matrix(k);
  const RatMat S = sigma_matrix(k);
  Subspace all = sym_operator_space(k);
  const auto& rows = all.basis.rows();
  const int R = all.rank();

  auto block = [&](int j_sign, int s_sign, const char* name) {
    // Solve J A - j_sign A J = 0 and sigma A sigma - s_sign A = 0 inside S(W_R).
    RatMat M(2 * d * d, R);
    for (int c = 0; c < R; ++c) {
      RatMat A = unflatten(rows[c], d, d);
      RatMat r1 = J * A - A * J;
      if (j_sign < 0) r1 = J * A + A * J;
      RatMat r2 = S * A * S;
      if (s_sign > 0)
        r2 = r2 - A;
      else
        r2 = r2 + A;
      for (int t = 0; t < d * d; ++t) {
        M(t, c) = r1.a[t];
        M(d * d + t, c) = r2.a[t];
      }
    }
    EchelonBasis basis(d * d);
    for (const auto& coeff : kernel_of(M)) {
      RatVec v(d * d, Rational(0));
      for (int c = 0; c < R; ++c) {
        if (coeff[c] != 0) vec_axpy(v, coeff[c], rows[c]);
      }
      primitivize(v);
      basis.adjoin(std::move(v));
    }
    return Subspace(end_ambient(k) + " " + name, std::move(basis));
  };

  return {block(+1, +1, "H+"), block(+1, -1, "H-"), block(-1, +1, "sH+"), block(-1, -1, "JsH+")};
}

Subspace g_span(const GroupAction& act, const std::string& ambient_name,
                const std::vector<RatVec>& seeds) {
  EchelonBasis basis(act.dim);
  for (const auto& s : seeds) {
    RatVec v = s;
    primitivize(v);
    basis.adjoin(std::move(v));
  }
  // Rows mutate when the basis self-reduces, so expand a snapshot per pass;
  // a pass that adds nothing certifies closure on a spanning set.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<RatVec> snapshot = basis.rows();
    for (const auto& v : snapshot) {
      for (int g = 0; g < 3; ++g) {
        RatVec img = act.apply(g, v);
        if (vec_is_zero(img)) continue;
        primitivize(img);
        if (basis.adjoin(std::move(img))) grew = true;
      }
    }
  }
  return Subspace(ambient_name, std::move(basis));
}

Subspace g_span_operators(int k, const std::vector<SymOperator>& seeds) {
  GroupAction ad = adjoint_action(k);
  std::vector<RatVec> vecs;
  for (const auto& s : seeds) vecs.push_back(s.flat());
  return g_span(ad, end_ambient(k), vecs);
}

Subspace ortho_complement(const Subspace& sub, const Subspace& ambient) {
  const int n = ambient.basis.ambient_dim();
  if (sub.basis.ambient_dim() != n)
    throw std::invalid_argument("ortho_complement: ambients of different dimension");
  int d = 0;
  while (d * d < n) ++d;
  if (d * d != n)
    throw std::invalid_argument("ortho_complement: trace form needs flattened square operators");
  for (const auto& r : sub.basis.rows()) {
    if (!ambient.basis.contains(r))
      throw std::invalid_argument("ortho_complement: subspace not contained in ambient");
  }
  const auto& arows = ambient.basis.rows();
  const auto& srows = sub.basis.rows();
  const int R = ambient.rank();
  const int S = sub.rank();
  RatMat M(S, R);
  for (int i = 0; i < S; ++i) {
    RatMat si = unflatten(srows[i], d, d);
    for (int j = 0; j < R; ++j) M(i, j) = trace_product(unflatten(arows[j], d, d), si);
  }
  EchelonBasis basis(n);
  for (const auto& coeff : kernel_of(M)) {
    RatVec v(n, Rational(0));
    for (int j = 0; j < R; ++j) {
      if (coeff[j] != 0) vec_axpy(v, coeff[j], arows[j]);
    }
    primitivize(v);
    basis.adjoin(std::move(v));
  }
  return Subspace("complement in " + ambient.ambient, std::move(basis));
}

Subspace mv0_subspace(int k) {
  if (k < 1) throw std::invalid_argument("mv0_subspace: requires k >= 1");
  const RepElement u0 = RepElement::monomial(k, 0);
  const RepElement ju0 = RepElement::monomial(k, 0, GaussianRational::unit_i());
  std::vector<RatVec> seeds;
  for (const auto& v : {u0, ju0}) {
    for (auto g : {LieGenerator::U2, LieGenerator::U3}) {
      RepElement img = act_lie(g, v);
      if (img.is_zero()) continue;
      RatVec rv = realify(img);
      primitivize(rv);
      seeds.push_back(std::move(rv));
    }
  }
  EchelonBasis basis(real_dim(k));
  for (auto& s : seeds) basis.adjoin(std::move(s));
  return Subspace(wr_ambient(k), std::move(basis));
}

int mv0_weight(int k) {
  Subspace s = mv0_subspace(k);
  int monomial = -1;
  for (const auto& row : s.basis.rows()) {
    RepElement e = unrealify(k, row);
    for (int a = 0; a <= k; ++a) {
      if (e.coeffs[a].is_zero()) continue;
      if (monomial >= 0 && monomial != a)
        throw std::logic_error("mv0_weight: space is not a single weight line");
      monomial = a;
    }
  }
  if (monomial < 0) throw std::logic_error("mv0_weight: empty space");
  return 2 * monomial - k;
}

}  // namespace qmoduli
