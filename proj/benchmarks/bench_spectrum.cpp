#include <benchmark/benchmark.h>

#include "semiq/spectrum.hpp"

namespace {

void BM_SolveSpectrum(benchmark::State& state) {
  const auto order = static_cast<semiq::SolverOrder>(state.range(0));
  const auto p = semiq::make_catalog_potential(semiq::PotentialKind::gaussian_well, {{"V0", 5.0}, {"w", 1.0}});
  for (auto _ : state)
    benchmark::DoNotOptimize(semiq::solve_spectrum(p, semiq::QuantumScale(0.1), order, std::nullopt));
  state.SetLabel(std::string(semiq::to_string(order)));
}
BENCHMARK(BM_SolveSpectrum)
    ->Arg(static_cast<int>(semiq::SolverOrder::order0))
    ->Arg(static_cast<int>(semiq::SolverOrder::full))
    ->Arg(static_cast<int>(semiq::SolverOrder::adiabatic))
    ->Unit(benchmark::kMillisecond);

void BM_SolveLevelClassFive(benchmark::State& state) {
  const auto p = semiq::make_catalog_potential(semiq::PotentialKind::poschl_teller, {{"V0", 1.0}, {"alpha", 1.0}});
  for (auto _ : state)
    benchmark::DoNotOptimize(semiq::solve_level(p, semiq::QuantumScale(0.1), 5, semiq::SolverOrder::full));
}
BENCHMARK(BM_SolveLevelClassFive);

}  // namespace
