#include <benchmark/benchmark.h>

#include "optdesign/criteria.hpp"
#include "optdesign/michaelis_menten.hpp"
#include "optdesign/optimizer.hpp"
#include "optdesign/pareto.hpp"

using namespace optdesign;

namespace {

void BM_ParetoFront(benchmark::State& state) {
  MMParams p;
  p.eps = 0.5;
  const Model m = mm_model(p);
  const double d_star = phi_d(fim(m, mm_d_optimal(p).design));
  const double r_star = optimize_design(OptimizeRequest(m, CriterionSpec::r())).criterion_value;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const auto designs = sample_two_point_designs(m, n, kDefaultSeed);
    benchmark::DoNotOptimize(pareto_front(evaluate_front_points(m, designs, d_star, r_star)));
  }
}
BENCHMARK(BM_ParetoFront)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
