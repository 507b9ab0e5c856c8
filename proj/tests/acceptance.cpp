// Acceptance gate: ten end-to-end criteria, one pass/fail line each, nonzero
// exit when any criterion fails.  Tolerances and time budgets are pinned here
// on purpose; loosening one is a contract change, not a tuning knob.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qmoduli/decomposition.hpp"
#include "qmoduli/embedding.hpp"
#include "qmoduli/group_action.hpp"
#include "qmoduli/moduli_space.hpp"
#include "qmoduli/operator_space.hpp"
#include "qmoduli/rep_element.hpp"

using namespace qmoduli;

namespace {

constexpr std::uint64_t kSeed = 24601;

constexpr double kTolIsometry = 1e-4;
constexpr double kTolCr = 1e-6;
constexpr double kTolQuadric = 1e-10;
constexpr double kTolDegree = 1e-3;
constexpr double kTolEnergy = 1e-3;
constexpr double kTolCondition = 1e-12;
constexpr double kTolKernel = 1e-9;
constexpr double kTolAlign = 1e-6;
constexpr double kTolKeyGap = 1e-6;
constexpr double kTolEquiv = 1e-8;
constexpr double kCtrlEquiv = 1e-3;

struct Outcome {
  bool pass = true;
  std::string detail;                  // appended to the status line on failure
  std::vector<std::string> info;       // extra report lines, printed indented
};

Outcome fail(std::string detail) { return {false, std::move(detail), {}}; }

std::string join_labels(const std::vector<IsotypicLabel>& labels) {
  std::string out;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i) out += " + ";
    if (labels[i].mult != 1) out += std::to_string(labels[i].mult) + "·";
    out += "S" + std::to_string(labels[i].m) + "_0";
  }
  return out.empty() ? "0" : out;
}

// S^top_0 + S^{top-2}_0 + ... down to S^0_0 or S^1_0.
std::vector<IsotypicLabel> chain(int top) {
  std::vector<IsotypicLabel> out;
  for (int m = top; m >= 0; m -= 2) out.push_back({m, 1});
  return out;
}

GroupAction real_form_action(int m) {
  std::vector<RatVec> rows;
  for (const auto& v : real_form_basis(2 * m)) rows.push_back(realify(v));
  return restricted_action(rep_action(2 * m), span_of(real_dim(2 * m), rows));
}

const ModuliDescriptor& descriptor(std::map<int, ModuliDescriptor>& cache, int k) {
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, moduli_descriptor(k)).first;
  return it->second;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Isometry ratio, holomorphicity, quadric isotropy, energy density at every
// sample plus the two-chart degree integral; shared by criteria 6 and 7.
Outcome geometry_battery(const EmbeddingMap& m, int degree,
                         const std::vector<DomainPoint>& xs, const std::string& tag) {
  for (const DomainPoint& x : xs) {
    const double ratio = isometry_ratio(m, x);
    if (std::abs(ratio - degree) > kTolIsometry)
      return fail(tag + ": isometry ratio " + fmt(ratio) + " vs " + std::to_string(degree));
    const double cr = cr_residual(m, x);
    if (cr >= kTolCr) return fail(tag + ": CR residual " + fmt(cr));
    const double iso = isotropy_defect(plane_to_quadric(eval_plane(m, x)));
    if (iso >= kTolQuadric) return fail(tag + ": quadric isotropy " + fmt(iso));
    const double en = energy_density(m, x);
    if (std::abs(en - 2.0 * degree) > kTolEnergy)
      return fail(tag + ": energy density " + fmt(en) + " vs " + std::to_string(2 * degree));
  }
  const double deg = degree_integral(m);
  if (std::abs(deg - degree) > kTolDegree)
    return fail(tag + ": degree integral " + fmt(deg) + " vs " + std::to_string(degree));
  return {};
}

// 1. Tangent dimension of the gauge moduli equals k(k-1), exactly, k = 1..8.
Outcome criterion_moduli_dimension(std::map<int, ModuliDescriptor>& cache) {
  for (int k = 1; k <= 8; ++k) {
    const ModuliDescriptor& d = descriptor(cache, k);
    if (d.dim() != k * (k - 1))
      return fail("k=" + std::to_string(k) + ": dim " + std::to_string(d.dim()) +
                  " != " + std::to_string(k * (k - 1)));
  }
  return {};
}

// 2. Four-block split of S(W_R): ranks equal the isotypic dimensions, the
// blocks carry exactly the predicted labels, and the ranks fill the space.
Outcome criterion_four_blocks() {
  for (int k = 1; k <= 6; ++k) {
    const auto blocks = split_S(k);
    const std::vector<std::vector<IsotypicLabel>> expected = {
        chain(k), chain(k - 1), chain(k), chain(k)};
    int total = 0;
    const GroupAction ad = adjoint_action(k);
    for (int i = 0; i < 4; ++i) {
      const int rank = blocks[i].rank();
      if (rank != label_dim(expected[i]))
        return fail("k=" + std::to_string(k) + " block " + std::to_string(i) + ": rank " +
                    std::to_string(rank) + " != " + std::to_string(label_dim(expected[i])));
      if (casimir_isotypic(ad, blocks[i].basis) != expected[i])
        return fail("k=" + std::to_string(k) + " block " + std::to_string(i) +
                    ": isotypic content mismatch");
      total += rank;
    }
    if (total != (2 * k + 2) * (2 * k + 3) / 2)
      return fail("k=" + std::to_string(k) + ": block ranks sum to " + std::to_string(total));
  }
  return {};
}

// 3. Product and symmetric-square formulas agree with the Casimir oracle for
// all k, l, n <= 6; the odd symmetric-square discrepancy is reported with
// both multisets and only the corrected one passes the dimension identity.
Outcome criterion_spectral_formulas() {
  Outcome out;
  for (int k = 0; k <= 6; ++k)
    for (int l = 0; l <= 6; ++l) {
      const auto labels = cg_real(k, l);
      if (label_dim(labels) != (2 * k + 1) * (2 * l + 1))
        return fail("cg-real " + std::to_string(k) + "," + std::to_string(l) + ": dim");
      const GroupAction t = tensor_action(real_form_action(k), real_form_action(l));
      if (casimir_isotypic(t, full_basis(t.dim)) != labels)
        return fail("cg-real " + std::to_string(k) + "," + std::to_string(l) + ": oracle");
    }
  for (int k = 0; k <= 6; ++k)
    for (int l = 0; l <= 6; ++l) {
      const auto ns = cg_complex(k, l);
      int dim = 0;
      // Realified, each complex summand S^n contributes eigenvalue -n(n+2)
      // with real dimension 4(n+1): the summand and its conjugate copy.
      std::vector<std::pair<int, int>> want;
      for (int n : ns) {
        dim += n + 1;
        if (!want.empty() && want.back().first == n)
          want.back().second += 4 * (n + 1);
        else
          want.emplace_back(n, 4 * (n + 1));
      }
      std::sort(want.begin(), want.end());
      if (dim != (k + 1) * (l + 1))
        return fail("cg-complex " + std::to_string(k) + "," + std::to_string(l) + ": dim");
      const GroupAction t = tensor_action(rep_action(k), rep_action(l));
      if (casimir_spectrum(t, full_basis(t.dim)) != want)
        return fail("cg-complex " + std::to_string(k) + "," + std::to_string(l) + ": oracle");
    }
  for (int n = 0; n <= 6; ++n) {
    const auto labels = sym_square_real_labels(n);
    if (!sym_square_dim_ok(n, labels))
      return fail("sym-square n=" + std::to_string(n) + ": corrected dim identity");
    const GroupAction t = tensor_action(rep_action(n), rep_action(n));
    if (casimir_isotypic(t, sym_square_basis(real_dim(n))) != labels)
      return fail("sym-square n=" + std::to_string(n) + ": oracle");
    const auto printed = sym_square_real_labels_as_printed(n);
    if (printed != labels) {  // odd n: second-sum bound corrected from r<=k-1 to r<=k
      if (sym_square_dim_ok(n, printed))
        return fail("sym-square n=" + std::to_string(n) + ": printed multiset passes dim");
      out.info.push_back("sym-square n=" + std::to_string(n) + " printed:   " +
                         join_labels(printed) + " | dim " + std::to_string(label_dim(printed)) +
                         " (identity fails)");
      out.info.push_back("sym-square n=" + std::to_string(n) + " corrected: " +
                         join_labels(labels) + " | dim " + std::to_string(label_dim(labels)) +
                         " (identity holds)");
    }
  }
  if (out.info.empty()) return fail("no symmetric-square discrepancy detected");
  return out;
}

// 4. Rigidity ranks: Hermitian pair span fills rank (k+1)^2 for k <= 6; the
// real-form pair span fills S(W^R), rank (2k+1)(k+1), for k <= 4.
Outcome criterion_rigidity() {
  for (int k = 1; k <= 6; ++k) {
    const RigidityReport r = rigidity_herm(k);
    if (r.expected != (k + 1) * (k + 1) || !r.rigid())
      return fail("herm k=" + std::to_string(k) + ": rank " + std::to_string(r.rank) + "/" +
                  std::to_string(r.expected));
  }
  for (int k = 1; k <= 4; ++k) {
    const RigidityReport r = rigidity_real(k);
    if (r.expected != (2 * k + 1) * (k + 1) || !r.rigid())
      return fail("real k=" + std::to_string(k) + ": rank " + std::to_string(r.rank) + "/" +
                  std::to_string(r.expected));
  }
  return {};
}

// 5. Pair-span content, 2 <= k <= 6.  With the identity restored the span of
// first-order pairs carries H(W) + 2 S^k_0 exactly; the span alone (pairs
// across distinct weight lines are trace-free) carries the same content minus
// one trivial summand.
Outcome criterion_pair_span_content(std::map<int, ModuliDescriptor>& cache) {
  for (int k = 2; k <= 6; ++k) {
    const ModuliDescriptor& d = descriptor(cache, k);
    std::vector<IsotypicLabel> with_id;  // H(W) + 2 S^k_0
    with_id.push_back({k, 3});
    for (int m = k - 1; m >= 0; --m) with_id.push_back({m, 1});
    const std::vector<IsotypicLabel> trace_free(with_id.begin(), with_id.end() - 1);
    const GroupAction ad = adjoint_action(k);
    if (casimir_isotypic(ad, d.span0.basis) != with_id)
      return fail("k=" + std::to_string(k) + ": span+identity content != H(W) + 2 S^k_0");
    if (casimir_isotypic(ad, d.span1.basis) != trace_free)
      return fail("k=" + std::to_string(k) + ": pair-span content != (H(W) + 2 S^k_0) - S^0_0");
  }
  return {};
}

// 6. Standard maps k = 1..4 pass the geometric battery at 25 fixed-seed
// sample points per chart.
Outcome criterion_standard_battery() {
  const auto xs = sample_points(25, kSeed);
  for (int k = 1; k <= 4; ++k) {
    const Outcome o = geometry_battery(standard_map(k), k, xs, "standard k=" + std::to_string(k));
    if (!o.pass) return o;
  }
  return {};
}

// 7. Ten fixed-seed interior deformations at k = 3: same battery at degree 3,
// gauge-condition residuals at solver precision, pairwise distinct keys.
Outcome criterion_deformed_battery(std::map<int, ModuliDescriptor>& cache) {
  const ModuliDescriptor& d = descriptor(cache, 3);
  std::mt19937_64 rng(kSeed);
  std::vector<ModuliPoint> pts;
  for (int i = 0; i < 10; ++i) pts.push_back(sample_interior(d, rng));
  const auto xs = sample_points(25, kSeed);
  for (size_t i = 0; i < pts.size(); ++i) {
    const std::string tag = "deformed #" + std::to_string(i);
    if (pts[i].status != PointStatus::interior) return fail(tag + ": not interior");
    const ConditionResiduals r = condition_residuals(d, pts[i]);
    if (r.order0 >= kTolCondition || r.order1 >= kTolCondition)
      return fail(tag + ": condition residuals " + fmt(r.order0) + ", " + fmt(r.order1));
    const Outcome o = geometry_battery(deformed_map(d, pts[i]), 3, xs, tag);
    if (!o.pass) return o;
  }
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      const double gap = key_distance(gauge_class_key(pts[i]), gauge_class_key(pts[j]));
      if (gap <= kTolKeyGap)
        return fail("keys #" + std::to_string(i) + ", #" + std::to_string(j) +
                    " too close: " + fmt(gap));
    }
  return {};
}

// 8. Two-parameter family at k = 2 on a 16-point circle grid: the unit circle
// is boundary with kernel dimension 3 and numerically contained kernel;
// scaling outside is infeasible, inside is interior.
Outcome criterion_family_boundary(std::map<int, ModuliDescriptor>& cache) {
  const ModuliDescriptor& d = descriptor(cache, 2);
  const auto xs = sample_points(5, kSeed);
  for (int i = 0; i < 16; ++i) {
    const double th = 2.0 * M_PI * i / 16.0;
    const double t = std::cos(th), s = std::sin(th);
    const std::string tag = "grid #" + std::to_string(i);
    const ModuliPoint b = family_point(d, t, s);
    if (b.status != PointStatus::boundary) return fail(tag + ": circle not boundary");
    if (b.kernel_dim != 3) return fail(tag + ": kernel dim " + std::to_string(b.kernel_dim));
    const double cont = kernel_containment(b, xs);
    if (cont >= kTolKernel) return fail(tag + ": kernel containment " + fmt(cont));
    if (family_point(d, 1.25 * t, 1.25 * s).status != PointStatus::infeasible)
      return fail(tag + ": outside circle not infeasible");
    if (family_point(d, 0.5 * t, 0.5 * s).status != PointStatus::interior)
      return fail(tag + ": inside circle not interior");
  }
  return {};
}

// 9. Domain rotation at k = 2: rotated and unrotated interior deformations
// give image-equivalent plane fields (one fitted orthogonal alignment passes
// held-out samples) while the gauge keys differ off the period 2 pi / k, and
// coincide at the full period.
Outcome criterion_rotation_orbit(std::map<int, ModuliDescriptor>& cache) {
  const ModuliDescriptor& d = descriptor(cache, 2);
  const ModuliPoint p0 = family_point(d, 0.45, 0.10);
  const EmbeddingMap m0 = deformed_map(d, p0);
  const auto fit_xs = sample_points(6, kSeed + 1);
  const auto check_xs = sample_points(6, kSeed + 2);
  for (const double th : {0.6, 2.0}) {
    const ModuliPoint pr = s1_rotate(d, p0, th);
    const auto align = fit_alignment(m0, deformed_map(d, pr), fit_xs, check_xs, kTolAlign);
    if (!align) return fail("theta=" + fmt(th) + ": no orthogonal alignment within tolerance");
    const double gap = key_distance(gauge_class_key(p0), gauge_class_key(pr));
    if (gap <= kTolKeyGap) return fail("theta=" + fmt(th) + ": keys coincide, gap " + fmt(gap));
  }
  const ModuliPoint full = s1_rotate(d, p0, M_PI);  // 2 pi / k
  const double gap = key_distance(gauge_class_key(p0), gauge_class_key(full));
  if (gap >= kTolKeyGap) return fail("full period moved the key by " + fmt(gap));
  return {};
}

// 10. Equivariance: every family map commutes with the group action through
// the realified module action; a generic k = 4 deformation does not.
Outcome criterion_equivariance(std::map<int, ModuliDescriptor>& cache) {
  std::mt19937_64 grng(kSeed);
  std::vector<Eigen::Matrix2cd> gs;
  for (int i = 0; i < 5; ++i) gs.push_back(random_su2(grng));
  const auto xs = sample_points(5, kSeed);
  const ModuliDescriptor& d2 = descriptor(cache, 2);
  const std::vector<std::pair<double, double>> slice = {{0.5, 0.0}, {0.3, 0.4}, {1.0, 0.0}};
  for (const auto& [t, s] : slice) {
    const double r = equivariance_residual(deformed_map(d2, family_point(d2, t, s)), gs, xs);
    if (r >= kTolEquiv)
      return fail("family (" + fmt(t) + "," + fmt(s) + "): residual " + fmt(r));
  }
  const ModuliDescriptor& d4 = descriptor(cache, 4);
  std::mt19937_64 rng(kSeed);
  const double ctrl = equivariance_residual(deformed_map(d4, sample_interior(d4, rng)), gs, xs);
  if (ctrl <= kCtrlEquiv) return fail("generic k=4 control too equivariant: " + fmt(ctrl));
  return {};
}

}  // namespace

int main() {
  std::map<int, ModuliDescriptor> cache;
  int failures = 0;

  const auto run = [&](int idx, const char* title, double budget, auto&& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && budget > 0.0 && secs > budget)
      o = fail("exceeded time budget of " + fmt(budget) + "s");
    if (!o.pass) ++failures;
    std::printf("%s %2d. %s%s%s  [%.2fs]\n", o.pass ? "PASS" : "FAIL", idx, title,
                o.detail.empty() ? "" : " -- ", o.detail.c_str(), secs);
    for (const std::string& line : o.info) std::printf("         %s\n", line.c_str());
    std::fflush(stdout);
  };

  run(1, "moduli tangent dimension equals k(k-1) for k = 1..8", 60.0,
      [&] { return criterion_moduli_dimension(cache); });
  run(2, "four-block split of S(W_R): ranks and isotypic content, k = 1..6", 0.0,
      [&] { return criterion_four_blocks(); });
  run(3, "product/symmetric-square formulas match Casimir oracles, k,l,n <= 6", 0.0,
      [&] { return criterion_spectral_formulas(); });
  run(4, "rigidity ranks: (k+1)^2 for k <= 6; real form (2k+1)(k+1) for k <= 4", 0.0,
      [&] { return criterion_rigidity(); });
  run(5, "pair-span isotypic content is H(W) + 2 S^k_0 (identity restored), k = 2..6", 0.0,
      [&] { return criterion_pair_span_content(cache); });
  run(6, "standard maps k = 1..4: isometry, CR, isotropy, degree, energy", 30.0,
      [&] { return criterion_standard_battery(); });
  run(7, "deformed maps k = 3: battery, condition residuals, distinct keys", 0.0,
      [&] { return criterion_deformed_battery(cache); });
  run(8, "family circle at k = 2: boundary kernel and containment, 16-point grid", 0.0,
      [&] { return criterion_family_boundary(cache); });
  run(9, "domain rotation at k = 2: image-equivalent planes, keys differ off period", 0.0,
      [&] { return criterion_rotation_orbit(cache); });
  run(10, "equivariance: family maps pass, generic k = 4 deformation fails", 0.0,
      [&] { return criterion_equivariance(cache); });

  std::printf("acceptance: %d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
