// Serial reference vs OpenMP kernels. Arg 0 selects the execution mode.

#include <benchmark/benchmark.h>

#include <vector>

#include "capcomp/capacity.hpp"
#include "capcomp/energy_model.hpp"
#include "capcomp/kernels.hpp"
#include "capcomp/sweep.hpp"

using namespace capcomp;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::serial : Execution::parallel; }

void BM_TransferStep(benchmark::State& state) {
  const int window = static_cast<int>(state.range(1));
  const std::size_t states = std::size_t{1} << (window - 1);
  std::vector<double> cur(states, 1.0 / static_cast<double>(states));
  std::vector<double> next(states);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::transfer_step(window, window / 2, cur, next, mode(state)));
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * states));
}
BENCHMARK(BM_TransferStep)->ArgsProduct({{0, 1}, {14, 18, 21}})->ArgNames({"parallel", "T"});

void BM_SpectralCapacity(benchmark::State& state) {
  const int window = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(swc_capacity_exact(window, window - 4, {}, mode(state)).value);
}
BENCHMARK(BM_SpectralCapacity)
    ->ArgsProduct({{0, 1}, {12, 16}})
    ->ArgNames({"parallel", "T"})
    ->Unit(benchmark::kMillisecond);

void BM_OutageScan(benchmark::State& state) {
  const auto spec = ConstraintSpec::swc(6, 4);
  const auto model = EnergyModel::saturated(Rational(3, 5), Rational(3, 2));
  const auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::exhaustive_outage_scan(spec, model, n, mode(state)));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) << n);
}
BENCHMARK(BM_OutageScan)->ArgsProduct({{0, 1}, {16, 20}})->ArgNames({"parallel", "n"})->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const SweepGrid grid{SweepAxis::e_max, Rational(3, 5), Rational(0), Rational(4), Rational(1, 5)};
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(grid, {}, mode(state)).size());
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
