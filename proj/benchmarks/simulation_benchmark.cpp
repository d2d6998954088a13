#include <string>

#include <vector>

#include <benchmark/benchmark.h>

#include "tft/simulation.hpp"

namespace {

void BM_SimulateGate(benchmark::State& state) {
  const std::vector<double> rates = {1e-3, 5e-4, 2e-3};
  const tft::SimulationConfig c{.samples = static_cast<std::uint64_t>(state.range(0)),
                                .seed = 1,
                                .t = 1000};
  for (auto _ : state)
    benchmark::DoNotOptimize(tft::SimulateGate(tft::GateKind::kPand, rates, c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateGate)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_SimulateAfds(benchmark::State& state) {
  const tft::FaultTree tree =
      tft::LoadTree(std::string(TFT_DATA_DIR) + "/afds.ft");
  const tft::SimulationConfig c{.samples = 1 << 18, .seed = 1, .t = 1000};
  for (auto _ : state) benchmark::DoNotOptimize(tft::SimulateTree(tree, c));
  state.SetItemsProcessed(state.iterations() * c.samples);
}
BENCHMARK(BM_SimulateAfds)->Unit(benchmark::kMillisecond);

}  // namespace
