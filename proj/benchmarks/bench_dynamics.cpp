#include <vector>

#include <benchmark/benchmark.h>

#include "capent/dynamics.hpp"
#include "capent/self_inverse.hpp"
#include "capent/speed_limits.hpp"

namespace {

void BM_HMaxNumeric(benchmark::State& state) {
  const capent::NonlocalHamiltonian h({1.0, 0.5, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(capent::h_max_numeric(h.matrix(), static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_HMaxNumeric)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Trajectory(benchmark::State& state) {
  const capent::NonlocalHamiltonian h({1.0, 0.5, 0.2});
  const capent::BipartitePureState psi = capent::haar_random_pure(2, 2, 11);
  std::vector<double> times;
  for (int i = 0; i < state.range(0); ++i) times.push_back(0.01 * i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(capent::simulate_trajectory(h, psi, times, capent::LogBase::E));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Trajectory)->Arg(10)->Arg(100);

void BM_QslFamily(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(capent::qsl_family(1.0, 1.0, 0.2, capent::LogBase::Two,
                                                static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_QslFamily)->Arg(1000)->Arg(10000);

void BM_Beta(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(capent::beta_search(capent::LogBase::E));
  }
}
BENCHMARK(BM_Beta)->Unit(benchmark::kMillisecond);

}  // namespace
