#include <benchmark/benchmark.h>

#include "bench_curves.hpp"
#include "shapegeo/dynamics.hpp"
#include "shapegeo/examples.hpp"

using namespace bench;

static void BM_GeodesicRhs(benchmark::State& state) {
  const GeodesicInitialData init = fig3_initial_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(geodesic_rhs(init.curve, init.velocity));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GeodesicRhs)->RangeMultiplier(2)->Range(128, 2048)->Complexity(benchmark::oN);

static void BM_IntegrateFig3(benchmark::State& state) {
  const GeodesicInitialData init = fig3_initial_data(512);
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_geodesic(init.curve, init.velocity, 1.0, steps));
}
BENCHMARK(BM_IntegrateFig3)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
