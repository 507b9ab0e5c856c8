// Command-line front end: decomposition queries, moduli tables, rigidity
// verdicts, map verification runs, and family sweeps.  All reports are
// deterministic for a fixed configuration; the QMODULI_SEED environment
// variable overrides any configured seed.  Exit status is 0 iff every
// enabled check passed at the effective tolerances.

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qmoduli/decomposition.hpp"
#include "qmoduli/embedding.hpp"
#include "qmoduli/group_action.hpp"
#include "qmoduli/moduli_space.hpp"
#include "qmoduli/operator_space.hpp"
#include "qmoduli/rep_element.hpp"

using json = nlohmann::ordered_json;
using namespace qmoduli;

namespace {

constexpr std::uint64_t kDefaultSeed = 24601;

std::uint64_t effective_seed(std::uint64_t cfg_seed) {
  if (const char* env = std::getenv("QMODULI_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("QMODULI_SEED", "must be a nonnegative integer");
    }
  }
  return cfg_seed;
}

std::string real_label(const IsotypicLabel& l) {
  std::string s;
  if (l.mult > 1) s += std::to_string(l.mult) + "·";
  return s + "S" + std::to_string(l.m) + "_0";
}

std::string join_labels(const std::vector<IsotypicLabel>& ls) {
  std::string s;
  for (size_t i = 0; i < ls.size(); ++i) {
    if (i) s += " + ";
    s += real_label(ls[i]);
  }
  return s;
}

// One verification check: value must stay at or below its threshold.
struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass() const { return value <= threshold; }
};

void print_csv(const std::string& command, int k, const std::vector<Check>& checks) {
  std::ostringstream os;
  os.precision(12);
  os << "command,k,check_name,value,threshold,pass\n";
  for (const Check& c : checks)
    os << command << ',' << k << ',' << c.name << ',' << c.value << ',' << c.threshold << ','
       << (c.pass() ? 1 : 0) << '\n';
  std::cout << os.str();
}

// ---------------------------------------------------------------- decompose

int cmd_decompose(const std::string& kind, int k, int l) {
  std::string body;
  int dim = 0, expected_dim = 0;
  bool oracle_ok = true;
  bool corrected = false;

  const auto real_form_action = [](int m) {
    std::vector<RatVec> rows;
    for (const auto& v : real_form_basis(2 * m)) rows.push_back(realify(v));
    return restricted_action(rep_action(2 * m), span_of(real_dim(2 * m), rows));
  };

  if (kind == "cg-real") {
    const auto labels = cg_real(k, l);
    body = join_labels(labels);
    dim = label_dim(labels);
    expected_dim = (2 * k + 1) * (2 * l + 1);
    const GroupAction t = tensor_action(real_form_action(k), real_form_action(l));
    oracle_ok = casimir_isotypic(t, full_basis(t.dim)) == labels;
  } else if (kind == "cg-complex") {
    const auto ns = cg_complex(k, l);
    for (size_t i = 0; i < ns.size(); ++i) {
      if (i) body += " + ";
      body += "S" + std::to_string(ns[i]);
      dim += ns[i] + 1;
    }
    expected_dim = (k + 1) * (l + 1);
    // Oracle: the realified complex tensor carries every complex summand S^n
    // twice, so the Casimir spectrum shows -n(n+2) with dimension 4(n+1) per
    // occurrence of n.
    std::vector<std::pair<int, int>> want;
    for (int n : ns) {
      if (!want.empty() && want.back().first == n)
        want.back().second += 4 * (n + 1);
      else
        want.emplace_back(n, 4 * (n + 1));
    }
    std::sort(want.begin(), want.end());
    const GroupAction t = tensor_action(rep_action(k), rep_action(l));
    oracle_ok = casimir_spectrum(t, full_basis(t.dim)) == want;
  } else if (kind == "sym-square") {
    const int n = k;
    const auto labels = sym_square_real_labels(n);
    body = join_labels(labels);
    dim = label_dim(labels);
    const int d = 2 * (n + 1);
    expected_dim = d * (d + 1) / 2;
    corrected = labels != sym_square_real_labels_as_printed(n);
    const GroupAction t = tensor_action(rep_action(n), rep_action(n));
    oracle_ok = casimir_isotypic(t, sym_square_basis(real_dim(n))) == labels;
  } else {
    throw CLI::ValidationError("kind", "must be cg-real, cg-complex or sym-square");
  }

  const bool ok = (dim == expected_dim) && oracle_ok;
  std::cout << body << " | dim " << dim << (ok ? " ok" : " MISMATCH");
  if (corrected) std::cout << " | paper-eq-corrected: true";
  std::cout << "\n";
  return ok ? 0 : 1;
}

// ------------------------------------------------------------------- moduli

int cmd_moduli(int k, int samples, std::uint64_t seed, const std::string& format) {
  ModuliDescriptor desc;
  try {
    desc = moduli_descriptor(k);
  } catch (const std::logic_error& e) {
    std::cerr << "moduli: " << e.what() << "\n";
    return 1;
  }
  const bool formula = desc.dim() == k * (k - 1);
  const RigidityReport rig = rigidity_real(k);

  std::mt19937_64 rng(seed);
  json sample_list = json::array();
  for (int i = 0; i < samples; ++i) {
    const ModuliPoint pt = sample_interior(desc, rng);
    json row;
    row["C_coords"] = pt.coords;
    row["status"] = to_string(pt.status);
    row["kernel_dim"] = pt.kernel_dim;
    sample_list.push_back(std::move(row));
  }

  if (format == "csv") {
    std::vector<Check> checks;
    checks.push_back({"dim_formula", double(desc.dim()), double(k * (k - 1))});
    checks.push_back({"rigid_real_rank_defect", double(rig.expected - rig.rank), 0.0});
    print_csv("moduli", k, checks);
  } else {
    json rep;
    rep["k"] = k;
    rep["dim"] = desc.dim();
    rep["formula_match"] = formula;
    json labels = json::array();
    for (const auto& l : desc.tangent_labels) labels.push_back(json::array({l.m, l.mult}));
    rep["labels"] = std::move(labels);
    rep["rigid_real"] = rig.rigid();
    rep["samples"] = std::move(sample_list);
    std::cout << rep.dump() << "\n";
  }
  return (formula && rig.rigid()) ? 0 : 1;
}

// ----------------------------------------------------------------- rigidity

int cmd_rigidity(int k, const std::string& mode, const std::string& format) {
  std::vector<Check> checks;
  json rep;
  rep["k"] = k;
  bool all_rigid = true;
  if (mode == "herm" || mode == "both") {
    const RigidityReport r = rigidity_herm(k);
    rep["herm"] = {{"rank", r.rank}, {"expected", r.expected}, {"rigid", r.rigid()}};
    checks.push_back({"herm_rank_defect", double(r.expected - r.rank), 0.0});
    all_rigid = all_rigid && r.rigid();
  }
  if (mode == "real" || mode == "both") {
    const RigidityReport r = rigidity_real(k);
    rep["real"] = {{"rank", r.rank}, {"expected", r.expected}, {"rigid", r.rigid()}};
    checks.push_back({"real_rank_defect", double(r.expected - r.rank), 0.0});
    all_rigid = all_rigid && r.rigid();
  }
  if (format == "csv")
    print_csv("rigidity", k, checks);
  else
    std::cout << rep.dump() << "\n";
  return all_rigid ? 0 : 1;
}

// ------------------------------------------------------------------- verify

struct VerifyTols {
  double isometry = 1e-4;
  double cr = 1e-6;
  double quadric = 1e-10;
  double degree = 1e-3;
  double equivariance = 1e-8;
  double kernel = 1e-9;
};

int cmd_verify(int k, bool standard, bool real_standard, std::vector<double> family_ts,
               std::vector<double> c_coords, int samples, std::uint64_t seed,
               const std::string& format, const VerifyTols& tol) {
  EmbeddingMap map;
  int expected_degree = k;
  bool equivariant_family = false;
  ModuliPoint point;
  bool has_point = false;

  if (real_standard) {
    map = real_standard_map(k);
    expected_degree = 2 * k;
    equivariant_family = true;
  } else if (!family_ts.empty()) {
    const ModuliDescriptor desc = moduli_descriptor(k);
    point = family_point(desc, family_ts[0], family_ts[1]);
    if (point.status == PointStatus::infeasible) {
      std::cerr << "verify: infeasible family point (t=" << family_ts[0]
                << ", s=" << family_ts[1] << "): Id+C has min eigenvalue "
                << point.eigenvalues.minCoeff() << " < 0\n";
      return 1;
    }
    has_point = true;
    map = deformed_map(desc, point);
    std::ostringstream nm;
    nm << "family k=" << k << " t=" << family_ts[0] << " s=" << family_ts[1];
    map.name = nm.str();
    equivariant_family = true;
  } else if (!c_coords.empty()) {
    const ModuliDescriptor desc = moduli_descriptor(k);
    if (static_cast<int>(c_coords.size()) != desc.dim())
      throw CLI::ValidationError("--C", "expected " + std::to_string(desc.dim()) +
                                            " tangent coordinates for k=" + std::to_string(k));
    point = make_point(desc, c_coords);
    if (point.status == PointStatus::infeasible) {
      std::cerr << "verify: infeasible C: Id+C has min eigenvalue "
                << point.eigenvalues.minCoeff() << " < 0\n";
      return 1;
    }
    has_point = true;
    map = deformed_map(desc, point);
  } else {
    (void)standard;  // the default branch
    map = standard_map(k);
    equivariant_family = true;
  }

  const auto xs = sample_points(samples, seed);
  double ratio_sum = 0.0, isom_dev = 0.0, cr_max = 0.0, quad_max = 0.0;
  for (const DomainPoint& x : xs) {
    const double r = isometry_ratio(map, x);
    ratio_sum += r;
    isom_dev = std::max(isom_dev, std::abs(r - expected_degree));
    cr_max = std::max(cr_max, cr_residual(map, x));
    quad_max = std::max(quad_max, isotropy_defect(plane_to_quadric(eval_plane(map, x))));
  }
  const double degree = degree_integral(map);

  bool has_equiv = equivariant_family;
  double equiv = 0.0;
  if (has_equiv) {
    std::mt19937_64 grng(seed);
    std::vector<Eigen::Matrix2cd> gs;
    for (int i = 0; i < 5; ++i) gs.push_back(random_su2(grng));
    equiv = equivariance_residual(map, gs, sample_points(5, seed));
  }

  const bool is_boundary = has_point && point.status == PointStatus::boundary;
  double kernel_resid = 0.0;
  if (is_boundary) kernel_resid = kernel_containment(point, xs);

  std::vector<Check> checks;
  checks.push_back({"isometry_max_dev", isom_dev, tol.isometry});
  checks.push_back({"cr_max", cr_max, tol.cr});
  checks.push_back({"quadric_max", quad_max, tol.quadric});
  checks.push_back({"degree_error", std::abs(degree - expected_degree), tol.degree});
  if (has_equiv) checks.push_back({"equivariance", equiv, tol.equivariance});
  if (is_boundary) checks.push_back({"kernel_containment", kernel_resid, tol.kernel});

  bool all_pass = true;
  for (const Check& c : checks) all_pass = all_pass && c.pass();

  if (format == "csv") {
    print_csv("verify", k, checks);
  } else {
    json rep;
    std::ostringstream desc_str;
    desc_str << map.name << " (target Gr_" << map.ambient() - 2 << "(R^" << map.ambient()
             << "))";
    rep["map"] = desc_str.str();
    rep["degree"] = degree;
    rep["isometry"] = {{"mean", ratio_sum / double(xs.size())}, {"max_dev", isom_dev}};
    rep["cr_max"] = cr_max;
    rep["quadric_max"] = quad_max;
    rep["equivariance"] = has_equiv ? json(equiv) : json(nullptr);
    rep["seed"] = seed;
    rep["kernel_containment"] = is_boundary ? json(kernel_resid) : json(nullptr);
    if (real_standard) rep["rigid_real"] = rigidity_real(k).rigid();
    json checks_obj;
    for (const Check& c : checks) checks_obj[c.name] = c.pass();
    rep["checks"] = std::move(checks_obj);
    rep["tolerances"] = {{"isometry", tol.isometry}, {"cr", tol.cr},
                         {"quadric", tol.quadric},  {"degree", tol.degree},
                         {"equivariance", tol.equivariance}, {"kernel", tol.kernel}};
    std::cout << rep.dump() << "\n";
  }
  return all_pass ? 0 : 1;
}

// ------------------------------------------------------------------- family

int cmd_family(int k, int grid, double radius, const std::string& format) {
  const ModuliDescriptor desc = moduli_descriptor(k);
  json rows = json::array();
  bool ok = true;
  int boundary_kernel = 0;
  for (int i = 0; i < grid; ++i) {
    const double th = 2.0 * M_PI * i / grid;
    const double t = radius * std::cos(th), s = radius * std::sin(th);
    const ModuliPoint pt = family_point(desc, t, s);
    const double r2 = t * t + s * s;
    const char* expect = r2 < 1.0 - 1e-9 ? "interior"
                         : r2 > 1.0 + 1e-9 ? "infeasible"
                                           : "boundary";
    const bool match = std::string(to_string(pt.status)) == expect &&
                       (pt.status != PointStatus::boundary || pt.kernel_dim == k + 1);
    ok = ok && match;
    if (pt.status == PointStatus::boundary) boundary_kernel = pt.kernel_dim;
    json row;
    row["t"] = t;
    row["s"] = s;
    row["status"] = to_string(pt.status);
    row["kernel_dim"] = pt.kernel_dim;
    rows.push_back(std::move(row));
  }
  if (format == "csv") {
    std::vector<Check> checks;
    checks.push_back({"status_grid_mismatches", ok ? 0.0 : 1.0, 0.0});
    print_csv("family", k, checks);
  } else {
    json rep;
    rep["k"] = k;
    rep["grid"] = grid;
    rep["radius"] = radius;
    rep["boundary_kernel_dim"] = boundary_kernel;
    rep["points"] = std::move(rows);
    rep["status_ok"] = ok;
    std::cout << rep.dump() << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moduli of holomorphic isometric embeddings into quadrics"};
  app.require_subcommand(1);

  // decompose
  std::string dec_kind;
  std::vector<int> dec_args;
  auto* dec = app.add_subcommand("decompose", "print a tensor/symmetric-square decomposition");
  dec->add_option("kind", dec_kind, "cg-real | cg-complex | sym-square")->required();
  dec->add_option("args", dec_args, "level arguments")->expected(1, 2);

  // moduli
  int mk = 1, msamples = 3;
  std::uint64_t mseed = kDefaultSeed;
  std::string mformat = "json";
  auto* mod = app.add_subcommand("moduli", "tangent-space table for one level");
  mod->add_option("--k", mk, "level")->required()->check(CLI::PositiveNumber);
  mod->add_option("--samples", msamples, "number of sampled interior points")
      ->check(CLI::PositiveNumber);
  mod->add_option("--seed", mseed, "sampling seed");
  mod->add_option("--format", mformat)->check(CLI::IsMember({"json", "csv"}));

  // rigidity
  int rk = 1;
  std::string rmode = "both", rformat = "json";
  auto* rig = app.add_subcommand("rigidity", "rank checks for the rigidity spans");
  rig->add_option("--k", rk, "level")->required()->check(CLI::NonNegativeNumber);
  rig->add_option("--mode", rmode)->check(CLI::IsMember({"herm", "real", "both"}));
  rig->add_option("--format", rformat)->check(CLI::IsMember({"json", "csv"}));

  // verify
  int vk = 1, vsamples = 25;
  std::uint64_t vseed = kDefaultSeed;
  std::string vformat = "json";
  bool vstd = false, vreal = false;
  std::vector<double> vfamily, vC;
  VerifyTols tol;
  auto* ver = app.add_subcommand("verify", "run the geometric battery for one map");
  ver->add_option("--k", vk, "level")->required()->check(CLI::PositiveNumber);
  auto* ostd = ver->add_flag("--standard", vstd, "verify the standard map (default)");
  auto* oreal = ver->add_flag("--real-standard", vreal, "verify the real standard map");
  auto* ofam = ver->add_option("--family", vfamily, "t s coordinates")->expected(2);
  auto* oc = ver->add_option("--C", vC, "tangent coordinates")->delimiter(',');
  ostd->excludes(oreal)->excludes(ofam)->excludes(oc);
  oreal->excludes(ofam)->excludes(oc);
  ofam->excludes(oc);
  ver->add_option("--samples", vsamples, "battery points per chart")->check(CLI::PositiveNumber);
  ver->add_option("--seed", vseed, "sampling seed");
  ver->add_option("--format", vformat)->check(CLI::IsMember({"json", "csv"}));
  ver->add_option("--tol-isometry", tol.isometry);
  ver->add_option("--tol-cr", tol.cr);
  ver->add_option("--tol-quadric", tol.quadric);
  ver->add_option("--tol-degree", tol.degree);
  ver->add_option("--tol-equivariance", tol.equivariance);
  ver->add_option("--tol-kernel", tol.kernel);

  // family
  int fk = 2, fgrid = 16;
  double fradius = 1.0;
  std::string fformat = "json";
  auto* fam = app.add_subcommand("family", "status sweep on a (t, s) circle");
  fam->add_option("--k", fk, "even level")->required()->check(CLI::PositiveNumber);
  fam->add_option("--grid", fgrid, "number of circle points")->check(CLI::PositiveNumber);
  fam->add_option("--radius", fradius, "circle radius")->check(CLI::NonNegativeNumber);
  fam->add_option("--format", fformat)->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (dec->parsed()) {
      if (dec_kind == "sym-square") {
        if (dec_args.size() != 1)
          throw CLI::ValidationError("decompose", "sym-square takes one level");
        if (dec_args[0] < 0) throw CLI::ValidationError("decompose", "level must be >= 0");
        return cmd_decompose(dec_kind, dec_args[0], 0);
      }
      if (dec_args.size() != 2)
        throw CLI::ValidationError("decompose", dec_kind + " takes two levels");
      if (dec_args[0] < 0 || dec_args[1] < 0)
        throw CLI::ValidationError("decompose", "levels must be >= 0");
      return cmd_decompose(dec_kind, dec_args[0], dec_args[1]);
    }
    if (mod->parsed()) return cmd_moduli(mk, msamples, effective_seed(mseed), mformat);
    if (rig->parsed()) return cmd_rigidity(rk, rmode, rformat);
    if (ver->parsed())
      return cmd_verify(vk, vstd, vreal, vfamily, vC, vsamples, effective_seed(vseed), vformat,
                        tol);
    if (fam->parsed()) return cmd_family(fk, fgrid, fradius, fformat);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
