#include "qmoduli/exact_linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmoduli {

std::string to_string(const GaussianRational& z) {
  if (z.im == 0) return z.re.get_str();
  if (z.re == 0) return z.im.get_str() + "*i";
  std::string s = z.re.get_str();
  if (z.im > 0) s += "+";
  return s + z.im.get_str() + "*i";
}

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols != o.rows) throw std::invalid_argument("RatMat: shape mismatch in product");
  RatMat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Rational& v = (*this)(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols; ++j) {
        if (o(k, j) != 0) r(i, j) += v * o(k, j);
      }
    }
  return r;
}

RatMat RatMat::operator+(const RatMat& o) const {
  RatMat r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
  return r;
}

RatMat RatMat::operator-(const RatMat& o) const {
  RatMat r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
  return r;
}

RatMat RatMat::transpose() const {
  RatMat r(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
  return r;
}

RatVec RatMat::apply(const RatVec& v) const {
  if (static_cast<int>(v.size()) != cols) throw std::invalid_argument("RatMat: apply shape");
  RatVec r(rows, Rational(0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
    }
  return r;
}

Rational RatMat::trace() const {
  Rational t(0);
  for (int i = 0; i < std::min(rows, cols); ++i) t += (*this)(i, i);
  return t;
}

bool RatMat::is_zero() const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

Rational trace_product(const RatMat& A, const RatMat& B) {
  if (A.cols != B.rows || A.rows != B.cols)
    throw std::invalid_argument("trace_product: shape mismatch");
  Rational t(0);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) {
      if (A(i, j) != 0 && B(j, i) != 0) t += A(i, j) * B(j, i);
    }
  return t;
}

RatVec flatten(const RatMat& m) { return m.a; }

RatMat unflatten(const RatVec& v, int rows, int cols) {
  if (static_cast<int>(v.size()) != rows * cols) throw std::invalid_argument("unflatten: size");
  RatMat m(rows, cols);
  m.a = v;
  return m;
}

void vec_axpy(RatVec& y, const Rational& c, const RatVec& x) {
  for (size_t i = 0; i < y.size(); ++i) {
    if (x[i] != 0) y[i] += c * x[i];
  }
}

Rational dot(const RatVec& x, const RatVec& y) {
  Rational t(0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0 && y[i] != 0) t += x[i] * y[i];
  }
  return t;
}

bool vec_is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

void primitivize(RatVec& v) {
  mpz_class den_lcm(1);
  for (const auto& x : v) {
    if (x != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
  }
  mpz_class num_gcd(0);
  int first_nonzero = -1;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (first_nonzero < 0) first_nonzero = static_cast<int>(i);
    mpz_class scaled_num = v[i].get_num() * (den_lcm / v[i].get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled_num.get_mpz_t());
  }
  if (first_nonzero < 0) return;
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (v[first_nonzero] < 0) scale = -scale;
  for (auto& x : v) {
    if (x != 0) {
      x *= scale;
      x.canonicalize();
    }
  }
}

void EchelonBasis::reduce(RatVec& v) const {
  if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("EchelonBasis: dim mismatch");
  for (size_t r = 0; r < rows_.size(); ++r) {
    const int p = pivots_[r];
    if (v[p] == 0) continue;
    Rational c = v[p] / rows_[r][p];
    c.canonicalize();
    vec_axpy(v, -c, rows_[r]);
    v[p] = 0;  // kill round-off-free exact residue
  }
}

bool EchelonBasis::contains(const RatVec& v) const {
  RatVec w = v;
  reduce(w);
  return vec_is_zero(w);
}

bool EchelonBasis::adjoin(RatVec v) {
  reduce(v);
  int p = -1;
  for (int i = 0; i < n_; ++i) {
    if (v[i] != 0) {
      p = i;
      break;
    }
  }
  if (p < 0) return false;
  primitivize(v);
  // Clear column p from the existing rows to keep the reduced invariant.
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r][p] == 0) continue;
    Rational c = rows_[r][p] / v[p];
    c.canonicalize();
    vec_axpy(rows_[r], -c, v);
    rows_[r][p] = 0;
    primitivize(rows_[r]);
  }
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  size_t pos = static_cast<size_t>(it - pivots_.begin());
  pivots_.insert(it, p);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

RatVec EchelonBasis::coordinates(const RatVec& v) const {
  RatVec w = v;
  RatVec coords(rows_.size(), Rational(0));
  for (size_t r = 0; r < rows_.size(); ++r) {
    const int p = pivots_[r];
    if (w[p] == 0) continue;
    Rational c = w[p] / rows_[r][p];
    c.canonicalize();
    coords[r] = c;
    vec_axpy(w, -c, rows_[r]);
    w[p] = 0;
  }
  if (!vec_is_zero(w)) throw std::invalid_argument("EchelonBasis: vector outside span");
  return coords;
}

std::vector<RatVec> EchelonBasis::kernel() const {
  std::vector<bool> is_pivot(n_, false);
  for (int p : pivots_) is_pivot[p] = true;
  std::vector<RatVec> out;
  for (int f = 0; f < n_; ++f) {
    if (is_pivot[f]) continue;
    RatVec x(n_, Rational(0));
    x[f] = 1;
    for (size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r][f] != 0) {
        Rational c = -rows_[r][f] / rows_[r][pivots_[r]];
        c.canonicalize();
        x[pivots_[r]] = c;
      }
    }
    primitivize(x);
    out.push_back(std::move(x));
  }
  return out;
}

EchelonBasis span_of(int ambient_dim, const std::vector<RatVec>& vectors) {
  EchelonBasis b(ambient_dim);
  for (const auto& v : vectors) b.adjoin(v);
  return b;
}

int rank_of(int ambient_dim, const std::vector<RatVec>& vectors) {
  return span_of(ambient_dim, vectors).rank();
}

std::vector<RatVec> kernel_of(const RatMat& M) {
  EchelonBasis rows(M.cols);
  for (int i = 0; i < M.rows; ++i) {
    RatVec r(M.a.begin() + static_cast<size_t>(i) * M.cols,
             M.a.begin() + static_cast<size_t>(i + 1) * M.cols);
    rows.adjoin(std::move(r));
  }
  return rows.kernel();
}

}  // namespace qmoduli
