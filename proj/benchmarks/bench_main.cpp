#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qmoduli/embedding.hpp"
#include "qmoduli/group_action.hpp"
#include "qmoduli/moduli_space.hpp"
#include "qmoduli/operator_space.hpp"

using namespace qmoduli;

// Exact-arithmetic pipeline: tangent space of the gauge moduli at level k
// (dominates every CLI command that touches a descriptor).
static void BM_ModuliDescriptor(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ModuliDescriptor d = moduli_descriptor(k);
    benchmark::DoNotOptimize(d.tangent.rank());
  }
}
BENCHMARK(BM_ModuliDescriptor)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_SplitS(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto blocks = split_S(k);
    benchmark::DoNotOptimize(blocks[0].rank());
  }
}
BENCHMARK(BM_SplitS)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

// Casimir isotypic decomposition of a realified tensor square, the oracle
// behind the decompose subcommand.
static void BM_CasimirTensorSquare(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const GroupAction t = tensor_action(rep_action(k), rep_action(k));
  for (auto _ : state) {
    auto labels = casimir_isotypic(t, sym_square_basis(real_dim(k)));
    benchmark::DoNotOptimize(labels.size());
  }
}
BENCHMARK(BM_CasimirTensorSquare)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

// Float64 pipeline: gauge point from tangent coordinates (eigensolve + PSD
// square root) and its certification residuals.
static void BM_MakePoint(benchmark::State& state) {
  const ModuliDescriptor d = moduli_descriptor(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  std::vector<double> coords(d.dim());
  for (double& c : coords) c = 0.1 * gauss(rng);
  for (auto _ : state) {
    ModuliPoint pt = make_point(d, coords);
    benchmark::DoNotOptimize(pt.status);
  }
}
BENCHMARK(BM_MakePoint)->Arg(3)->Arg(6);

static void BM_ConditionResiduals(benchmark::State& state) {
  const ModuliDescriptor d = moduli_descriptor(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(7);
  const ModuliPoint pt = sample_interior(d, rng);
  for (auto _ : state) {
    ConditionResiduals r = condition_residuals(d, pt);
    benchmark::DoNotOptimize(r.order1);
  }
}
BENCHMARK(BM_ConditionResiduals)->Arg(3)->Arg(6);

// Geometry battery building blocks used by verify.
static void BM_EvalPlane(benchmark::State& state) {
  const EmbeddingMap m = standard_map(static_cast<int>(state.range(0)));
  const DomainPoint x{0, {0.31, -0.22}};
  for (auto _ : state) {
    OrientedPlane p = eval_plane(m, x);
    benchmark::DoNotOptimize(p.a.sum());
  }
}
BENCHMARK(BM_EvalPlane)->Arg(2)->Arg(4);

static void BM_IsometryRatio(benchmark::State& state) {
  const EmbeddingMap m = standard_map(static_cast<int>(state.range(0)));
  const DomainPoint x{0, {0.31, -0.22}};
  for (auto _ : state) benchmark::DoNotOptimize(isometry_ratio(m, x));
}
BENCHMARK(BM_IsometryRatio)->Arg(2)->Arg(4);

static void BM_DegreeIntegral(benchmark::State& state) {
  const EmbeddingMap m = standard_map(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(degree_integral(m));
}
BENCHMARK(BM_DegreeIntegral)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_EquivarianceResidual(benchmark::State& state) {
  const ModuliDescriptor d = moduli_descriptor(2);
  const EmbeddingMap m = deformed_map(d, family_point(d, 0.5, 0.0));
  std::mt19937_64 rng(7);
  std::vector<Eigen::Matrix2cd> gs;
  for (int i = 0; i < 5; ++i) gs.push_back(random_su2(rng));
  const auto xs = sample_points(5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(equivariance_residual(m, gs, xs));
}
BENCHMARK(BM_EquivarianceResidual)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
