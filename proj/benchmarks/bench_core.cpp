#include <benchmark/benchmark.h>

#include "sip/config.hpp"
#include "sip/models.hpp"
#include "sip/quadrature.hpp"
#include "sip/solvers.hpp"
#include "sip/tridiagonal.hpp"
#include "sip/wavefunction.hpp"

namespace {

const sip::ModelParams kT = sip::ModelParams::tanh6(24.0, 0.35);

void BM_SturmCount(benchmark::State& state) {
  sip::SolverConfig cfg = sip::resolve_config(kT);
  cfg.grid_points = static_cast<int>(state.range(0));
  const sip::TridiagonalOperator op = sip::discretize_hamiltonian(kT, cfg);
  double lambda = 200.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sip::sturm_count(op, lambda));
    lambda += 1e-9;  // defeat value caching
  }
  state.SetItemsProcessed(state.iterations() * op.size());
}
BENCHMARK(BM_SturmCount)->Arg(4000)->Arg(24000);

void BM_LowestNine(benchmark::State& state) {
  sip::SolverConfig cfg = sip::resolve_config(kT);
  cfg.grid_points = static_cast<int>(state.range(0));
  const sip::TridiagonalOperator op = sip::discretize_hamiltonian(kT, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(sip::lowest_eigenvalues(op, 9));
}
BENCHMARK(BM_LowestNine)->Arg(4000)->Arg(24000)->Unit(benchmark::kMillisecond);

void BM_ShootingLevel(benchmark::State& state) {
  const sip::SolverConfig cfg = sip::resolve_config(kT);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sip::shooting_solve(kT, cfg, n));
}
BENCHMARK(BM_ShootingLevel)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_WkbAction(benchmark::State& state) {
  const sip::SolverConfig cfg = sip::resolve_config(kT);
  double e = 300.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sip::wkb_action(kT, e, cfg, nullptr));
    e += 1e-9;
  }
}
BENCHMARK(BM_WkbAction)->Unit(benchmark::kMillisecond);

void BM_BuildState(benchmark::State& state) {
  const sip::SolverConfig cfg = sip::resolve_config(kT);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sip::build_state(kT, n, cfg));
}
BENCHMARK(BM_BuildState)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_InnerProductTop(benchmark::State& state) {
  const sip::SolverConfig cfg = sip::resolve_config(kT);
  const sip::ExactWavefunction w8 = sip::build_state(kT, 8, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(sip::inner_product(w8, w8, cfg));
}
BENCHMARK(BM_InnerProductTop)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
