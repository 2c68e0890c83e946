// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "sciwb/integration.hpp"
#include "sciwb/koopman.hpp"

using namespace sciwb;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_SigmaApEpsGrid(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto table = koopman::random_map(rng, 12);
  const std::vector<Rational> weights(12, Rational(1));
  const koopman::Grid grid{-1.2, 1.2, -1.2, 1.2, 0.025};
  for (auto _ : state) benchmark::DoNotOptimize(koopman::sigma_ap_eps(table, weights, 0.1, grid, mode(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_SigmaApEpsGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Hausdorff(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  PointSet a, b;
  for (int i = 0; i < 4000; ++i) {
    a.points.emplace_back(u(rng), u(rng));
    b.points.emplace_back(u(rng), u(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(koopman::hausdorff(a, b, mode(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_Hausdorff)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_VerifyReduction(benchmark::State& state) {
  const auto r = integration::affine_reduction(integration::Interval(-1, 3));
  const VerifyOptions opts{100, 20, 1e-9, 0, mode(state)};
  for (auto _ : state) benchmark::DoNotOptimize(verify_reduction(r, opts));
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_VerifyReduction)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
