#include <benchmark/benchmark.h>

#include "capent/measures.hpp"

namespace {

void BM_CapacityPure(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const capent::BipartitePureState psi = capent::haar_random_pure(d, d, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(capent::capacity_pure(psi, capent::LogBase::E));
  }
}
BENCHMARK(BM_CapacityPure)->RangeMultiplier(2)->Range(2, 32);

void BM_ModularHamiltonian(benchmark::State& state) {
  const capent::DensityOperator rho = capent::random_density(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(capent::modular_hamiltonian(rho, capent::LogBase::E));
  }
}
BENCHMARK(BM_ModularHamiltonian)->RangeMultiplier(2)->Range(2, 64);

void BM_MaxVarianceSpectrum(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(capent::solve_max_variance_spectrum(state.range(0)));
  }
}
BENCHMARK(BM_MaxVarianceSpectrum)->Arg(4)->Arg(1024)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
