#include "kenmotsu/curvature_conditions.hpp"
#include "kenmotsu/examples.hpp"
#include "kenmotsu/nsnm_connection.hpp"
#include "kenmotsu/runner.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace kenmotsu;

namespace {

const char* const kNames[] = {"euclidean3", "h3", "h5", "ne5"};

Point midpoint(const NamedExample& ex) {
  Point p;
  for (const auto& iv : ex.sample_box) p.push_back(0.5 * (iv.lo + iv.hi));
  return p;
}

void BM_Riemann(benchmark::State& state) {
  const auto ex = find_example(kNames[state.range(0)]).value();
  const Point p = midpoint(ex);
  for (auto _ : state) benchmark::DoNotOptimize(riemann(ex.manifold, p, {}));
  state.SetLabel(ex.name);
}
BENCHMARK(BM_Riemann)->DenseRange(0, 3);

void BM_RiemannFiniteDifference(benchmark::State& state) {
  const auto ex = find_example(kNames[state.range(0)]).value();
  const auto chart = ex.manifold.finite_difference_only();
  const Point p = midpoint(ex);
  for (auto _ : state) benchmark::DoNotOptimize(riemann(chart, p, {}));
  state.SetLabel(ex.name);
}
BENCHMARK(BM_RiemannFiniteDifference)->DenseRange(0, 3);

void BM_TildeCurvature(benchmark::State& state) {
  const auto ex = find_example(kNames[state.range(0)]).value();
  const Point p = midpoint(ex);
  const auto conn = build_nsnm(ex.manifold, ex.structure, {}, std::vector<Point>{p});
  for (auto _ : state) benchmark::DoNotOptimize(tilde_curvature(conn, p));
  state.SetLabel(ex.name);
}
BENCHMARK(BM_TildeCurvature)->DenseRange(0, 3);

void BM_DerivationActionRank4(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MultiTensor B(d, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
  MultiTensor T(d, covariant(4));
  for (std::size_t i = 0; i < B.size(); ++i) B[i] = u(rng);
  for (std::size_t i = 0; i < T.size(); ++i) T[i] = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(derivation_action(B, T));
}
BENCHMARK(BM_DerivationActionRank4)->Arg(3)->Arg(5);

void BM_FullRun(benchmark::State& state) {
  RunConfig cfg;
  cfg.num_points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run(cfg));
}
BENCHMARK(BM_FullRun)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
