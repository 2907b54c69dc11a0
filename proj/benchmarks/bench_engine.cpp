#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "evanesim/app/config.hpp"
#include "evanesim/app/run.hpp"
#include "evanesim/pulse.hpp"
#include "evanesim/scenarios.hpp"
#include "evanesim/timing.hpp"
#include "evanesim/xfermat.hpp"

namespace {

using namespace evanesim;

void BM_LatticeScatter(benchmark::State& state) {
  const int periods = static_cast<int>(state.range(0));
  const auto spec = LatticeSpec::quarter_wave(1.6, 1.0, 9.15e9, periods);
  const Stack stack = photonic_lattice(spec);
  const double omega = 2.0 * kPi * 9.15e9;
  for (auto _ : state) benchmark::DoNotOptimize(scatter(stack, omega));
  state.SetComplexityN(periods);
}
BENCHMARK(BM_LatticeScatter)->RangeMultiplier(4)->Range(2, 512)->Complexity(benchmark::oN);

void BM_FtirSpectrum(benchmark::State& state) {
  const DoublePrismSpec spec;
  const Stack stack = double_prism(spec);
  const auto grid = FrequencyGrid::uniform(0.5 * spec.center_omega(), 1.5 * spec.center_omega(),
                                           static_cast<std::size_t>(state.range(0)),
                                           spec.center_frequency);
  for (auto _ : state) benchmark::DoNotOptimize(scatter_spectrum(stack, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FtirSpectrum)->Arg(256)->Arg(4096);

void BM_HartmanScan(benchmark::State& state) {
  const DoublePrismSpec spec;
  const auto family = ftir_family(spec);
  const double omega0 = spec.center_omega();
  const auto lengths = default_hartman_lengths(family.decay(omega0));
  for (auto _ : state) benchmark::DoNotOptimize(hartman_scan(family, omega0, lengths));
}
BENCHMARK(BM_HartmanScan)->Unit(benchmark::kMicrosecond);

void BM_PulsePropagate(benchmark::State& state) {
  const DoublePrismSpec spec;
  const Stack stack = double_prism(spec);
  const PulseSpec pulse;
  for (auto _ : state) benchmark::DoNotOptimize(propagate(pulse, stack));
}
BENCHMARK(BM_PulsePropagate)->Unit(benchmark::kMillisecond);

void BM_SweepWorkers(benchmark::State& state) {
  const auto config = app::parse_config(
      R"({"scenario": "ftir", "sweep": "gap:0:3lambda:64", "outputs": ["scatter", "timing", "gh"]})");
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(app::run(config, workers));
}
BENCHMARK(BM_SweepWorkers)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
