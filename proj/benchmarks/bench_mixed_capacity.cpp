#include <benchmark/benchmark.h>

#include "capent/mixed_capacity.hpp"

namespace {

void BM_ClosestSeparableNumeric(benchmark::State& state) {
  const capent::DensityOperator rho = capent::family1_state(0.5);
  capent::PptSolverOptions opts;
  opts.algorithm = state.range(0) == 0 ? capent::PptAlgorithm::Barrier : capent::PptAlgorithm::ProjectedGradient;
  for (auto _ : state) {
    benchmark::DoNotOptimize(capent::closest_separable_numeric(rho, opts));
  }
  state.SetLabel(state.range(0) == 0 ? "barrier" : "projected-gradient");
}
BENCHMARK(BM_ClosestSeparableNumeric)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CapacityMixed(benchmark::State& state) {
  const capent::DensityOperator rho = capent::family2_state(0.5);
  const capent::DensityOperator sigma = capent::closest_separable_family2(0.5).sigma_star;
  for (auto _ : state) {
    benchmark::DoNotOptimize(capent::capacity_mixed(rho, sigma, capent::LogBase::E));
  }
}
BENCHMARK(BM_CapacityMixed);

void BM_ProjectPpt(benchmark::State& state) {
  capent::Matrix m = capent::family1_state(0.9).matrix();
  m(0, 3) = m(3, 0) = 0.8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(capent::project_ppt_states(m));
  }
}
BENCHMARK(BM_ProjectPpt);

}  // namespace
