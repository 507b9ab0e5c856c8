#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qmoduli {

using Rational = mpq_class;
using RatVec = std::vector<Rational>;

// Gaussian rational a + bi with exact arithmetic.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  static GaussianRational unit_i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }

  GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
  GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational operator*(const GaussianRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
};

using CVec = std::vector<GaussianRational>;

std::string to_string(const GaussianRational& z);

// Dense matrix over Q, row-major.
struct RatMat {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> a;

  RatMat() = default;
  RatMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rational(0)) {}

  Rational& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rational& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static RatMat identity(int n);
  RatMat operator*(const RatMat& o) const;
  RatMat operator+(const RatMat& o) const;
  RatMat operator-(const RatMat& o) const;
  RatMat transpose() const;
  RatVec apply(const RatVec& v) const;  // rows x cols times cols-vector
  Rational trace() const;
  bool is_zero() const;
};

// trace(A*B) without forming the product.
Rational trace_product(const RatMat& A, const RatMat& B);

RatVec flatten(const RatMat& m);
RatMat unflatten(const RatVec& v, int rows, int cols);

void vec_axpy(RatVec& y, const Rational& c, const RatVec& x);  // y += c*x
Rational dot(const RatVec& x, const RatVec& y);
bool vec_is_zero(const RatVec& v);

// Scale v so entries are coprime integers and the first nonzero entry is positive.
// Zero vectors stay zero.
void primitivize(RatVec& v);

// Row space of a set of vectors kept in reduced echelon form.
// Invariants: rows are ordered by pivot column; every row is a primitive integer
// vector; each pivot column is zero in all other rows.
class EchelonBasis {
 public:
  explicit EchelonBasis(int ambient_dim) : n_(ambient_dim) {}

  int ambient_dim() const { return n_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<RatVec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // Reduces v against the rows in place; afterwards v vanishes on all pivot columns.
  void reduce(RatVec& v) const;
  bool contains(const RatVec& v) const;
  // Adjoins v if independent; returns true when the rank grew.
  bool adjoin(RatVec v);
  // Coordinates c with v = sum c_i * row_i; throws std::invalid_argument if v is outside.
  RatVec coordinates(const RatVec& v) const;

  // Kernel of the linear functionals given by the rows (i.e. the orthogonal
  // complement for the standard dot product), as primitive vectors ordered by
  // their free-column index.
  std::vector<RatVec> kernel() const;

 private:
  int n_;
  std::vector<RatVec> rows_;
  std::vector<int> pivots_;
};

// Echelon span of a list of vectors.
EchelonBasis span_of(int ambient_dim, const std::vector<RatVec>& vectors);

int rank_of(int ambient_dim, const std::vector<RatVec>& vectors);

// Basis of {x : M x = 0}, primitive, deterministic order.
std::vector<RatVec> kernel_of(const RatMat& M);

}  // namespace qmoduli
