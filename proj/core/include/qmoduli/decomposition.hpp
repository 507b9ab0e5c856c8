#pragma once

#include <vector>

#include "qmoduli/exact_linalg.hpp"

namespace qmoduli {

// Label of the real irreducible SO(3)-module S^m_0 R^3 (dimension 2m+1);
// its complexification is S^{2m} C^2 and the Casimir U1^2+U2^2+U3^2 acts on
// it by -4m(m+1).
struct IsotypicLabel {
  int m = 0;
  int mult = 1;
  bool operator==(const IsotypicLabel& o) const { return m == o.m && mult == o.mult; }
};

int label_dim(const std::vector<IsotypicLabel>& labels);
// Collapse duplicates, sort by m descending, drop zero multiplicities.
std::vector<IsotypicLabel> normalize_labels(std::vector<IsotypicLabel> labels);

// S^k x S^l = sum of S^{k+l-2r}, r = 0..min(k,l); returned as the list of n's.
std::vector<int> cg_complex(int k, int l);

// S^k_0 x S^l_0 = sum of S^{k+l-r}_0, r = 0..2*min(k,l).
std::vector<IsotypicLabel> cg_real(int k, int l);

// Isotypic labels of the symmetric square of the realified S^n C^2:
//   n = 2k:   3*(S^{2k}_0 + S^{2k-2}_0 + ... ) + (S^{2k-1}_0 + S^{2k-3}_0 + ...)
//   n = 2k+1: 3*(S^{2k+1}_0 + S^{2k-1}_0 + ...) + (S^{2k}_0 + S^{2k-2}_0 + ... + S^0_0)
// The odd case uses the dimension-correct second-sum bound r <= k; the
// as-printed variant (bound r <= k-1) is kept for the discrepancy report.
std::vector<IsotypicLabel> sym_square_real_labels(int n);
std::vector<IsotypicLabel> sym_square_real_labels_as_printed(int n);

// True when sum of label dims matches dim Sym^2(R^{2n+2}) = (n+1)(2n+3).
bool sym_square_dim_ok(int n, const std::vector<IsotypicLabel>& labels);

}  // namespace qmoduli
