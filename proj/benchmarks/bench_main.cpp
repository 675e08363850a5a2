#include <benchmark/benchmark.h>

#include "oqcar/cognition.hpp"
#include "oqcar/oqs_engine.hpp"
#include "oqcar/sweep.hpp"

namespace {

oqcar::ComplexMatrix cognition() {
  return oqcar::build_cognition_matrix(
      oqcar::build_luce_rates(oqcar::default_utility_table(), 3.0));
}

void BM_generator_block_assembly(benchmark::State& state) {
  const oqcar::ComplexMatrix c = cognition();
  for (auto _ : state) benchmark::DoNotOptimize(oqcar::build_generator(0.8, c));
}
BENCHMARK(BM_generator_block_assembly);

void BM_generator_summed_assembly(benchmark::State& state) {
  const oqcar::ComplexMatrix c = cognition();
  for (auto _ : state) benchmark::DoNotOptimize(oqcar::build_generator_brute(0.8, c));
}
BENCHMARK(BM_generator_summed_assembly);

void BM_evolve_exponential(benchmark::State& state) {
  const oqcar::GeneratorMatrix g = oqcar::build_generator(0.8, cognition());
  const oqcar::DensityState rho0 = oqcar::initial_state_mixed(oqcar::DriverBelief{0.4}, 0.5);
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oqcar::evolve(g, rho0, t));
}
BENCHMARK(BM_evolve_exponential)->Arg(1)->Arg(10)->Arg(100);

void BM_pure_sweep_51x51(benchmark::State& state) {
  oqcar::SweepConfig cfg;
  cfg.utilities = oqcar::default_utility_table();
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oqcar::run_pure_sweep(cfg));
}
BENCHMARK(BM_pure_sweep_51x51)->Arg(1)->Arg(2);

void BM_mixed_sweep_51x51(benchmark::State& state) {
  oqcar::SweepConfig cfg;
  cfg.utilities = oqcar::default_utility_table();
  cfg.mode = oqcar::SweepMode::Mixed;
  cfg.alpha = 0.8;
  cfg.lambda = 1.0;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(oqcar::run_mixed_sweep(cfg));
}
BENCHMARK(BM_mixed_sweep_51x51);

}  // namespace

BENCHMARK_MAIN();
