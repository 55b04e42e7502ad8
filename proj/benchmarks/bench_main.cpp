#include <benchmark/benchmark.h>

#include <lightcone/lightcone.hpp>

#include <cmath>

namespace {

using namespace lightcone;

void BM_LaplacianFull(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridPtr g = build_grid(GridMode::FullSphere, n, 2 * n, 0.0);
  const ScalarField f =
      ScalarField::sample(g, [](double t, double p) { return std::exp(0.2 * std::sin(t) * std::cos(p)); });
  for (auto _ : state) benchmark::DoNotOptimize(laplacian(f));
}
BENCHMARK(BM_LaplacianFull)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_LaplacianAxisym(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridPtr g = build_grid(GridMode::AxisymTruncated, n, 1, 0.2);
  const ScalarField f = ScalarField::sample(g, [](double t, double) { return std::cos(t); });
  for (auto _ : state) benchmark::DoNotOptimize(laplacian(f));
}
BENCHMARK(BM_LaplacianAxisym)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_KEps(benchmark::State& state) {
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    EpsConstruction c = build_f_eps(eps);
    benchmark::DoNotOptimize(compute_k_eps(c));
  }
}
BENCHMARK(BM_KEps)->Arg(5)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
