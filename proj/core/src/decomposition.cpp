#include "qmoduli/decomposition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qmoduli {

int label_dim(const std::vector<IsotypicLabel>& labels) {
  int d = 0;
  for (const auto& L : labels) d += L.mult * (2 * L.m + 1);
  return d;
}

std::vector<IsotypicLabel> normalize_labels(std::vector<IsotypicLabel> labels) {
  std::map<int, int> mult;
  for (const auto& L : labels) mult[L.m] += L.mult;
  std::vector<IsotypicLabel> out;
  for (auto it = mult.rbegin(); it != mult.rend(); ++it) {
    if (it->second != 0) out.push_back({it->first, it->second});
  }
  return out;
}

std::vector<int> cg_complex(int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("cg_complex: negative level");
  std::vector<int> out;
  for (int r = 0; r <= std::min(k, l); ++r) out.push_back(k + l - 2 * r);
  return out;
}

std::vector<IsotypicLabel> cg_real(int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("cg_real: negative label");
  if (k < l) std::swap(k, l);
  std::vector<IsotypicLabel> out;
  for (int r = 0; r <= 2 * l; ++r) out.push_back({k + l - r, 1});
  return normalize_labels(out);
}

namespace {

std::vector<IsotypicLabel> sym_square_labels_impl(int n, bool corrected_odd_bound) {
  if (n < 0) throw std::invalid_argument("sym_square_real_labels: negative level");
  std::vector<IsotypicLabel> out;
  if (n % 2 == 0) {
    const int k = n / 2;
    for (int r = 0; r <= k; ++r) out.push_back({2 * k - 2 * r, 3});
    for (int r = 0; r + 1 <= k; ++r) out.push_back({2 * k - 1 - 2 * r, 1});
  } else {
    const int k = (n - 1) / 2;
    for (int r = 0; r <= k; ++r) out.push_back({2 * k + 1 - 2 * r, 3});
    const int second_bound = corrected_odd_bound ? k : k - 1;
    for (int r = 0; r <= second_bound; ++r) out.push_back({2 * k - 2 * r, 1});
  }
  return normalize_labels(out);
}

}  // namespace

std::vector<IsotypicLabel> sym_square_real_labels(int n) {
  return sym_square_labels_impl(n, /*corrected_odd_bound=*/true);
}

std::vector<IsotypicLabel> sym_square_real_labels_as_printed(int n) {
  return sym_square_labels_impl(n, /*corrected_odd_bound=*/false);
}

bool sym_square_dim_ok(int n, const std::vector<IsotypicLabel>& labels) {
  const int d = 2 * n + 2;  // real dimension of the realified module
  return label_dim(labels) == d * (d + 1) / 2;
}

}  // namespace qmoduli
