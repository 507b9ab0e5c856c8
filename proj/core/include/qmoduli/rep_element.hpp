#pragma once

#include <vector>

#include "qmoduli/exact_linalg.hpp"

namespace qmoduli {

// Element of the (k+1)-dimensional irreducible SU(2)-module realized on
// homogeneous polynomials of degree k in x, y. Basis m_a = x^a y^{k-a},
// a = 0..k; the weight of m_a is 2a - k.
struct RepElement {
  int k = 0;
  CVec coeffs;  // size k+1, coeffs[a] multiplies m_a

  RepElement() = default;
  explicit RepElement(int level) : k(level), coeffs(level + 1) {}

  static RepElement monomial(int level, int a, GaussianRational c = GaussianRational(Rational(1)));

  bool is_zero() const;
  RepElement operator+(const RepElement& o) const;
  RepElement operator-(const RepElement& o) const;
  RepElement scaled(const GaussianRational& c) const;
  bool operator==(const RepElement& o) const { return k == o.k && coeffs == o.coeffs; }
};

// su(2) basis U1 = diag(i,-i), U2 = antidiag(1,-1), U3 = antidiag(i,i) and the
// complexified sl(2) triple with U1 = iH, U2 = E - F, U3 = i(E + F).
enum class LieGenerator { U1, U2, U3, E, F, H };

// Monomial weights 2a - k, a = 0..k.
std::vector<int> weights(int k);

// Derived action of a generator: E m_a = (k-a) m_{a+1}, F m_a = a m_{a-1},
// H m_a = (2a-k) m_a; E raises weight by 2, F lowers by 2.
RepElement act_lie(LieGenerator g, const RepElement& v);

// Invariant Hermitian product, conjugate-linear in the second slot:
// <m_a, m_a> = a!(k-a)!/k!, distinct monomials orthogonal.
GaussianRational inner(const RepElement& u, const RepElement& v);

// Antilinear structure map sigma(x^a y^b) = (-1)^b x^b y^a; sigma^2 = (-1)^k.
struct StructureMap {
  int k = 0;
  RepElement apply(const RepElement& v) const;
  int parity() const { return (k % 2 == 0) ? 1 : -1; }
};

StructureMap structure_map(int k);

// For even k: basis of the sigma-fixed real form, k+1 primitive vectors built
// from m_a + sigma(m_a) and i(m_a - sigma(m_a)). Throws for odd k.
std::vector<RepElement> real_form_basis(int k);

// --- realified coordinates -------------------------------------------------
//
// W_R is W viewed over R with ordered basis {m_0..m_k, J m_0..J m_k}; the
// real inner product Re<,> has diagonal Gram with entry 1/binom(k,a) twice.

int real_dim(int k);  // 2k+2

RatVec realify(const RepElement& v);
RepElement unrealify(int k, const RatVec& v);

// Real Gram diagonal: [c_0..c_k, c_0..c_k], c_a = a!(k-a)!/k!.
RatVec gram_diagonal(int k);

// 2(k+1) x 2(k+1) real matrices.
RatMat j_matrix(int k);      // multiplication by i
RatMat sigma_matrix(int k);  // the structure map as a real-linear map
RatMat realified_generator(LieGenerator g, int k);

// Realification of a complex-linear map given by its (k+1)^2 Gaussian-rational
// matrix in the monomial basis.
RatMat realify_complex_matrix(const std::vector<CVec>& m);

}  // namespace qmoduli
