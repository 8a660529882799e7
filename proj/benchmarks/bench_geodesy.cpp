#include <benchmark/benchmark.h>

#include "bench_curves.hpp"

using namespace bench;

static void BM_LiftCurve(benchmark::State& state) {
  const PlaneCurve c = star(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lift_curve(c));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LiftCurve)->RangeMultiplier(2)->Range(128, 4096)->Complexity(benchmark::oN);

static void BM_DistanceClosedModRot(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const PlaneCurve a = star(n, 0.2), b = star(n, 0.3, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(distance_closed_mod_rot(a, b));
}
BENCHMARK(BM_DistanceClosedModRot)->Arg(256)->Arg(1024);

static void BM_NeretinPath(benchmark::State& state) {
  const std::size_t n = 512;
  const LiftPair p0 = lift_curve(star(n, 0.2)), p1 = lift_curve(star(n, 0.3, 0.7));
  for (auto _ : state) {
    const NeretinPath path = neretin_path(align_frames(p0, p1));
    benchmark::DoNotOptimize(path.evaluate(0.5));
  }
}
BENCHMARK(BM_NeretinPath);
