#include <benchmark/benchmark.h>

#include "semiq/oracle.hpp"

namespace {

void BM_EigenvaluesFd(benchmark::State& state) {
  const auto p = semiq::make_catalog_potential(semiq::PotentialKind::poschl_teller, {{"V0", 1.0}, {"alpha", 1.0}});
  semiq::GridConfig grid;
  grid.half_width = 12.0;
  grid.n_points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(semiq::eigenvalues_fd(p, semiq::QuantumScale(0.1), grid, 5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigenvaluesFd)->Arg(1000)->Arg(2000)->Arg(4000)->Arg(8000)->Arg(16000)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace
