#include <benchmark/benchmark.h>

#include "optdesign/michaelis_menten.hpp"
#include "optdesign/optimizer.hpp"
#include "optdesign/slr.hpp"

using namespace optdesign;

namespace {

void BM_OptimizeSlrR(benchmark::State& state) {
  OptimizeRequest req(slr_model(DesignSpace(1.0, 5.0)), CriterionSpec::r());
  req.grid_resolution = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(optimize_design(req));
}
BENCHMARK(BM_OptimizeSlrR)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_OptimizeMm(benchmark::State& state) {
  MMParams p;
  p.eps = 0.5;
  const auto kind = static_cast<CriterionKind>(state.range(0));
  const CriterionSpec spec = kind == CriterionKind::R2 ? CriterionSpec::r2() : CriterionSpec::r();
  const OptimizeRequest req(mm_model(p), spec);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_design(req));
}
BENCHMARK(BM_OptimizeMm)
    ->Arg(static_cast<int>(CriterionKind::R))
    ->Arg(static_cast<int>(CriterionKind::R2))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
