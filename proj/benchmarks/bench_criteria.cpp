#include <benchmark/benchmark.h>

#include "optdesign/criteria.hpp"
#include "optdesign/michaelis_menten.hpp"
#include "optdesign/slr.hpp"

using namespace optdesign;

namespace {

const SlrInterval kInterval(1.0, 5.0);

void BM_FimSlr(benchmark::State& state) {
  const Model m = slr_model(kInterval.space());
  const Design d = r_optimal_slr(kInterval);
  for (auto _ : state) benchmark::DoNotOptimize(fim(m, d));
}
BENCHMARK(BM_FimSlr);

void BM_PhiR(benchmark::State& state) {
  const InfoMatrix info = fim(slr_model(kInterval.space()), r_optimal_slr(kInterval));
  for (auto _ : state) benchmark::DoNotOptimize(phi_r(info));
}
BENCHMARK(BM_PhiR);

void BM_DerivativeReportMm(benchmark::State& state) {
  const MMParams p;
  const Model m = mm_model(p);
  const Design d = mm_d_optimal(p).design;
  const auto points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(derivative_report(CriterionSpec::d(), m, d, points));
}
BENCHMARK(BM_DerivativeReportMm)->Arg(1000);

void BM_SlrTable(benchmark::State& state) {
  const double a[] = {3, 1, 0.5, 0.2, -0.2, -0.5, -1, -3, -5};
  for (auto _ : state) benchmark::DoNotOptimize(table_slr(a, 5.0));
}
BENCHMARK(BM_SlrTable);

}  // namespace

BENCHMARK_MAIN();
