#pragma once

#include <array>
#include <string>
#include <vector>

#include "qmoduli/group_action.hpp"

namespace qmoduli {

// Real-linear endomorphism A of W_R that is symmetric for the real invariant
// inner product: G A = (G A)^T with G the diagonal Gram matrix.
struct SymOperator {
  int k = 0;
  RatMat mat;  // (2k+2) x (2k+2)

  SymOperator() = default;
  SymOperator(int level, RatMat m);  // validates Gram-symmetry

  static SymOperator identity(int level);
  static SymOperator sigma(int level);    // the structure map, lies in S(W_R)
  static SymOperator j_sigma(int level);  // J composed with sigma

  RatVec flat() const { return flatten(mat); }
};

// Trace form (A, B) = trace(A B); positive definite on S(W_R).
Rational trace_form(const SymOperator& a, const SymOperator& b);

// Pairing maps. herm_pair is the Hermitian average u (.,v) + v (.,u) over C,
// realified; sym_pair is the real analogue on W_R with Re<,>.
SymOperator herm_pair(const RepElement& u, const RepElement& v);
SymOperator sym_pair(int k, const RatVec& u_real, const RatVec& v_real);
SymOperator sym_pair(const RepElement& u, const RepElement& v);

// Named subspace of a real ambient space (flattened operators or vectors).
struct Subspace {
  std::string ambient;
  EchelonBasis basis;

  Subspace() : basis(0) {}
  Subspace(std::string amb, EchelonBasis b) : ambient(std::move(amb)), basis(std::move(b)) {}
  int rank() const { return basis.rank(); }
};

// All of S(W_R) at level k, inside flattened End(W_R).
Subspace sym_operator_space(int k);

// Decomposition of S(W_R) into the four blocks cut out by commutation with J
// and conjugation by sigma, in the order
//   H+  : AJ = JA,  sigma A sigma = A
//   H-  : AJ = JA,  sigma A sigma = -A
//   sH+ : AJ = -JA, sigma A sigma = A
//   JsH+: AJ = -JA, sigma A sigma = -A
// The same formulas are used for odd k (sigma antilinear with square -1).
std::array<Subspace, 4> split_S(int k);

// Smallest G-invariant subspace containing the seeds: closure of the span
// under the generator action (connected group, so this is the group span).
Subspace g_span(const GroupAction& act, const std::string& ambient_name,
                const std::vector<RatVec>& seeds);
Subspace g_span_operators(int k, const std::vector<SymOperator>& seeds);

// Trace-form orthogonal complement of sub inside ambient (flattened square
// operators). Throws std::invalid_argument if sub is not contained in ambient.
Subspace ortho_complement(const Subspace& sub, const Subspace& ambient);

// The 2-plane m V_0 of W_R: span of U2, U3 applied to the lowest-weight fiber
// V_0 = {y^k, J y^k}. It is the complex line through x y^{k-1}.
Subspace mv0_subspace(int k);
// Torus weight of that line (2 - k); computed from the constructed space.
int mv0_weight(int k);

}  // namespace qmoduli
