#include <benchmark/benchmark.h>

#include "bench_curves.hpp"
#include "shapegeo/curvature.hpp"

using namespace bench;

static void BM_BuildLtop(benchmark::State& state) {
  const PlaneCurve c = star(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_ltop(c));
}
BENCHMARK(BM_BuildLtop)->RangeMultiplier(2)->Range(128, 1024);

static void BM_CurvatureReport(benchmark::State& state) {
  const PlaneCurve c = star(static_cast<std::size_t>(state.range(0)));
  const auto [h1, h2] = generated_horizontal_pair(c, 7);
  for (auto _ : state) benchmark::DoNotOptimize(curvature_report(c, h1, h2));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CurvatureReport)->RangeMultiplier(2)->Range(64, 512)->Complexity()->Unit(benchmark::kMillisecond);
