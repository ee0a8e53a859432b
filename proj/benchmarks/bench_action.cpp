#include <benchmark/benchmark.h>

#include <cmath>

#include "semiq/action.hpp"
#include "semiq/corrections.hpp"

namespace {

const semiq::PotentialSpec& gaussian() {
  static const auto p =
      semiq::make_catalog_potential(semiq::PotentialKind::gaussian_well, {{"V0", 5.0}, {"w", 1.0}});
  return p;
}

void BM_Action(benchmark::State& state) {
  semiq::QuadratureConfig cfg;
  cfg.rel_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(semiq::action(gaussian(), semiq::QuantumScale(0.1), 2.5, cfg));
}
BENCHMARK(BM_Action)->Arg(6)->Arg(10)->Arg(13);

void BM_GradientIntegral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(semiq::gradient_integral(gaussian(), 2.5));
}
BENCHMARK(BM_GradientIntegral);

void BM_Delta1Direct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(semiq::delta1_direct(gaussian(), semiq::QuantumScale(0.1), 2.5));
}
BENCHMARK(BM_Delta1Direct);

}  // namespace
