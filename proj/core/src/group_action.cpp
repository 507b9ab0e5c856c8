#include "qmoduli/group_action.hpp"

#include <stdexcept>
#include <string>

namespace qmoduli {

namespace {

const char* gen_name(int g) {
  switch (g) {
    case 0:
      return "U1";
    case 1:
      return "U2";
    default:
      return "U3";
  }
}

}  // namespace

GroupAction rep_action(int k) {
  GroupAction a;
  a.dim = real_dim(k);
  a.gens[0] = realified_generator(LieGenerator::U1, k);
  a.gens[1] = realified_generator(LieGenerator::U2, k);
  a.gens[2] = realified_generator(LieGenerator::U3, k);
  return a;
}

GroupAction restricted_action(const GroupAction& act, const EchelonBasis& sub) {
  const int r = sub.rank();
  GroupAction out;
  out.dim = r;
  for (int g = 0; g < 3; ++g) {
    RatMat m(r, r);
    for (int j = 0; j < r; ++j) {
      RatVec img = act.apply(g, sub.rows()[j]);
      RatVec coords;
      try {
        coords = sub.coordinates(img);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument(std::string("restricted_action: subspace not invariant under ") +
                                    gen_name(g));
      }
      for (int i = 0; i < r; ++i) m(i, j) = coords[i];
    }
    out.gens[g] = std::move(m);
  }
  return out;
}

GroupAction tensor_action(const GroupAction& A, const GroupAction& B) {
  GroupAction out;
  const int dA = A.dim, dB = B.dim;
  out.dim = dA * dB;
  for (int g = 0; g < 3; ++g) {
    RatMat m(out.dim, out.dim);
    const RatMat& X = A.gens[g];
    const RatMat& Y = B.gens[g];
    for (int i = 0; i < dA; ++i)
      for (int i2 = 0; i2 < dA; ++i2) {
        if (X(i2, i) == 0) continue;
        for (int j = 0; j < dB; ++j) m(i2 * dB + j, i * dB + j) += X(i2, i);
      }
    for (int j = 0; j < dB; ++j)
      for (int j2 = 0; j2 < dB; ++j2) {
        if (Y(j2, j) == 0) continue;
        for (int i = 0; i < dA; ++i) m(i * dB + j2, i * dB + j) += Y(j2, j);
      }
    out.gens[g] = std::move(m);
  }
  return out;
}

GroupAction adjoint_action_of(const GroupAction& base) {
  GroupAction out;
  const int d = base.dim;
  out.dim = d * d;
  for (int g = 0; g < 3; ++g) {
    const RatMat& U = base.gens[g];
    RatMat m(d * d, d * d);
    // [U, X] = U X - X U on vec(X), row-major: U (x) I - I (x) U^T.
    for (int i = 0; i < d; ++i)
      for (int i2 = 0; i2 < d; ++i2) {
        if (U(i2, i) == 0) continue;
        for (int j = 0; j < d; ++j) m(i2 * d + j, i * d + j) += U(i2, i);
      }
    for (int j = 0; j < d; ++j)
      for (int j2 = 0; j2 < d; ++j2) {
        if (U(j, j2) == 0) continue;  // (X U)_{i j2} uses U(j, j2)... transpose entry
        for (int i = 0; i < d; ++i) m(i * d + j2, i * d + j) -= U(j, j2);
      }
    out.gens[g] = std::move(m);
  }
  return out;
}

GroupAction adjoint_action(int k) { return adjoint_action_of(rep_action(k)); }

EchelonBasis sym_square_basis(int d) {
  EchelonBasis b(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      RatVec v(d * d, Rational(0));
      v[i * d + j] += 1;
      v[j * d + i] += 1;
      b.adjoin(std::move(v));
    }
  return b;
}

EchelonBasis full_basis(int dim) {
  EchelonBasis b(dim);
  for (int i = 0; i < dim; ++i) {
    RatVec v(dim, Rational(0));
    v[i] = 1;
    b.adjoin(std::move(v));
  }
  return b;
}

EchelonBasis span_in(const GroupAction& act, const std::vector<RatVec>& vectors) {
  EchelonBasis b(act.dim);
  for (const auto& v : vectors) b.adjoin(v);
  return b;
}

namespace {

// Columns of the restriction of `apply` to the subspace.
RatMat restrict_map(const EchelonBasis& sub, const std::vector<RatVec>& applied, const char* what) {
  const int r = sub.rank();
  RatMat m(r, r);
  for (int j = 0; j < r; ++j) {
    RatVec coords;
    try {
      coords = sub.coordinates(applied[j]);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(std::string("casimir: subspace not invariant under ") + what);
    }
    for (int i = 0; i < r; ++i) m(i, j) = coords[i];
  }
  return m;
}

int kernel_dim(const RatMat& M) {
  EchelonBasis rows(M.cols);
  for (int i = 0; i < M.rows; ++i) {
    RatVec r(M.a.begin() + static_cast<size_t>(i) * M.cols,
             M.a.begin() + static_cast<size_t>(i + 1) * M.cols);
    rows.adjoin(std::move(r));
  }
  return M.cols - rows.rank();
}

}  // namespace

std::vector<std::pair<int, int>> casimir_spectrum(const GroupAction& act, const EchelonBasis& sub) {
  const int r = sub.rank();
  std::vector<std::pair<int, int>> out;
  if (r == 0) return out;

  // Restrict the generators; this also certifies invariance.
  std::array<RatMat, 3> G;
  for (int g = 0; g < 3; ++g) {
    std::vector<RatVec> applied(r);
    for (int j = 0; j < r; ++j) applied[j] = act.apply(g, sub.rows()[j]);
    G[g] = restrict_map(sub, applied, gen_name(g));
  }

  RatMat omega = G[0] * G[0] + G[1] * G[1] + G[2] * G[2];
  RatMat u1sq = G[0] * G[0];

  // U1^2 has eigenvalues -s^2 (s = torus rotation speed); its eigenspaces are
  // Casimir-invariant, so the spectrum can be assembled blockwise.
  int found = 0;
  std::vector<std::pair<int, int>> spectrum;  // (n, dim) accumulated
  for (int s = 0; found < r; ++s) {
    if (s > 2 * r + 2)
      throw std::logic_error("casimir_spectrum: torus speeds did not exhaust the space");
    RatMat shifted = u1sq;
    const Rational s2(s * s);
    for (int i = 0; i < r; ++i) shifted(i, i) += s2;
    EchelonBasis rows(r);
    for (int i = 0; i < r; ++i) {
      RatVec row(shifted.a.begin() + static_cast<size_t>(i) * r,
                 shifted.a.begin() + static_cast<size_t>(i + 1) * r);
      rows.adjoin(std::move(row));
    }
    std::vector<RatVec> block = rows.kernel();
    if (block.empty()) continue;
    found += static_cast<int>(block.size());

    EchelonBasis bb(r);
    for (auto& v : block) bb.adjoin(std::move(v));
    const int rb = bb.rank();
    RatMat omega_b(rb, rb);
    for (int j = 0; j < rb; ++j) {
      RatVec img = omega.apply(bb.rows()[j]);
      RatVec coords = bb.coordinates(img);  // block is Casimir-invariant
      for (int i = 0; i < rb; ++i) omega_b(i, j) = coords[i];
    }
    // Within speed s only eigenvalues -n(n+2) with n >= s, n = s (mod 2) occur.
    int left = rb;
    for (int n = s; left > 0; n += 2) {
      if (n > 2 * r + 2)
        throw std::logic_error("casimir_spectrum: eigenvalues did not exhaust a block");
      RatMat shifted_b = omega_b;
      const Rational lam(n * (n + 2));
      for (int i = 0; i < rb; ++i) shifted_b(i, i) += lam;
      const int d = kernel_dim(shifted_b);
      if (d == 0) continue;
      left -= d;
      spectrum.push_back({n, d});
    }
  }

  std::vector<std::pair<int, int>> merged;
  for (int n = 0;; ++n) {
    int total = 0;
    bool any_left = false;
    for (auto& [nn, dd] : spectrum) {
      if (nn == n) total += dd;
      if (nn >= n) any_left = true;
    }
    if (total > 0) merged.push_back({n, total});
    if (!any_left) break;
  }
  int check = 0;
  for (auto& [n, d] : merged) check += d;
  if (check != r) throw std::logic_error("casimir_spectrum: eigenspace dimensions incomplete");
  return merged;
}

std::vector<IsotypicLabel> casimir_isotypic(const GroupAction& act, const EchelonBasis& sub) {
  auto spec = casimir_spectrum(act, sub);
  std::vector<IsotypicLabel> labels;
  for (auto& [n, d] : spec) {
    if (n % 2 != 0)
      throw std::logic_error("casimir_isotypic: eigenvalue -" + std::to_string(n * (n + 2)) +
                             " is not of the form -4m(m+1)");
    const int m = n / 2;
    if (d % (2 * m + 1) != 0)
      throw std::logic_error("casimir_isotypic: eigenspace dimension " + std::to_string(d) +
                             " not divisible by " + std::to_string(2 * m + 1));
    labels.push_back({m, d / (2 * m + 1)});
  }
  return normalize_labels(labels);
}

}  // namespace qmoduli
