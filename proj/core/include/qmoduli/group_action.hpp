#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qmoduli/decomposition.hpp"
#include "qmoduli/exact_linalg.hpp"
#include "qmoduli/rep_element.hpp"

namespace qmoduli {

// Linear SU(2)-action on a real vector space, given by the exact matrices of
// the generators U1, U2, U3.
struct GroupAction {
  int dim = 0;
  std::array<RatMat, 3> gens;

  RatVec apply(int g, const RatVec& v) const { return gens[g].apply(v); }
};

// Action on W_R = realified S^k C^2 (dimension 2k+2).
GroupAction rep_action(int k);

// Action restricted to an invariant subspace, written in the rows of `sub`.
// Throws std::invalid_argument naming the generator if not invariant.
GroupAction restricted_action(const GroupAction& act, const EchelonBasis& sub);

// Tensor product action on R^{dA*dB}, index i*dB + j.
GroupAction tensor_action(const GroupAction& A, const GroupAction& B);

// Conjugation action X -> [U, X] on End(R^d) flattened row-major, built from
// the generator matrices of the base action.
GroupAction adjoint_action_of(const GroupAction& base);
GroupAction adjoint_action(int k);  // adjoint_action_of(rep_action(k))

// Symmetric tensors inside the tensor square of R^d, as a subspace basis.
EchelonBasis sym_square_basis(int d);

EchelonBasis full_basis(int dim);
EchelonBasis span_in(const GroupAction& act, const std::vector<RatVec>& vectors);

// Exact spectrum of the Casimir U1^2 + U2^2 + U3^2 on an invariant subspace:
// pairs (n, d) meaning eigenvalue -n(n+2) with real eigenspace dimension d,
// sorted by n. Completeness (sum d = rank) is certified; failure is fatal.
std::vector<std::pair<int, int>> casimir_spectrum(const GroupAction& act, const EchelonBasis& sub);

// Isotypic decomposition into real labels S^m_0 R^3: eigenvalue -4m(m+1)
// with multiplicity eigenspace_dim/(2m+1). Throws std::logic_error if some
// eigenvalue is not of that form or a multiplicity fails to divide evenly.
std::vector<IsotypicLabel> casimir_isotypic(const GroupAction& act, const EchelonBasis& sub);

}  // namespace qmoduli
