#include <string>

#include <benchmark/benchmark.h>

#include "tft/analysis.hpp"

namespace {

const tft::FaultTree& Afds() {
  static const tft::FaultTree tree =
      tft::LoadTree(std::string(TFT_DATA_DIR) + "/afds.ft");
  return tree;
}

void BM_AfdsSweep(benchmark::State& state) {
  const tft::AnalysisConfig c = tft::AnalysisConfig::FromTree(Afds());
  for (auto _ : state) benchmark::DoNotOptimize(tft::Sweep(Afds(), c));
}
BENCHMARK(BM_AfdsSweep)->Unit(benchmark::kMicrosecond);

void BM_AfdsImportance(benchmark::State& state) {
  const tft::AnalysisConfig c = tft::AnalysisConfig::FromTree(Afds());
  for (auto _ : state)
    benchmark::DoNotOptimize(
        tft::ImportanceTable(Afds(), tft::MissionTime(500), c));
}
BENCHMARK(BM_AfdsImportance)->Unit(benchmark::kMicrosecond);

}  // namespace
