#include <benchmark/benchmark.h>

#include "bench_curves.hpp"

using namespace bench;

static void BM_DpMatchOpen(benchmark::State& state) {
  const std::size_t segs = static_cast<std::size_t>(state.range(0));
  RealVec a0(segs), a1(segs);
  for (std::size_t k = 0; k < segs; ++k) {
    const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(segs);
    a0[k] = std::sin(t);
    a1[k] = 0.5 * std::sin(2.0 * t);
  }
  MatchOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(dp_match_angles(a0, a1, opts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DpMatchOpen)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNSquared);

// Closed search with the criterion settings scaled down by the offset count.
static void BM_DpMatchClosed(benchmark::State& state) {
  const PlaneCurve a = star(256, 0.2), b = star(256, 0.3, 0.7);
  MatchOptions opts;
  opts.n0 = opts.n1 = 128;
  opts.n_offsets = static_cast<std::size_t>(state.range(0));
  opts.n_rot = 64;
  opts.window = 2;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(dp_match_closed(a, b, opts));
}
BENCHMARK(BM_DpMatchClosed)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_UpperBoundPipeline(benchmark::State& state) {
  const PlaneCurve a = star(256, 0.2), b = star(256, 0.3, 0.7);
  MatchOptions opts;
  opts.n0 = opts.n1 = 64;
  opts.n_offsets = 8;
  opts.n_rot = 16;
  opts.window = 2;
  const MatchResult m = dp_match_closed(a, b, opts);
  for (auto _ : state) benchmark::DoNotOptimize(upper_bound_pipeline(a, b, m, 256));
}
BENCHMARK(BM_UpperBoundPipeline)->Unit(benchmark::kMillisecond);
