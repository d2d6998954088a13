#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "tft/error.hpp"
#include "tft/gates.hpp"

namespace {

std::vector<tft::Tfn> Rates(int n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(-6, -2);
  std::vector<tft::Tfn> out;
  for (int i = 0; i < n; ++i)
    out.push_back(tft::Fuzzify(std::pow(10.0, u(rng)), tft::SpreadPercent(15)));
  return out;
}

void BM_FuzzyPand(benchmark::State& state) {
  const auto rates = Rates(static_cast<int>(state.range(0)));
  const tft::MissionTime t(1000);
  for (auto _ : state) benchmark::DoNotOptimize(tft::FuzzyPand(rates, t));
}
BENCHMARK(BM_FuzzyPand)->DenseRange(2, 8, 2);

void BM_FuzzyPor(benchmark::State& state) {
  const auto rates = Rates(static_cast<int>(state.range(0)));
  const tft::MissionTime t(100);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(tft::FuzzyPor(rates, t));
    } catch (const tft::InternalError&) {
    }
  }
}
BENCHMARK(BM_FuzzyPor)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void BM_CrispPand(benchmark::State& state) {
  std::vector<double> rates;
  for (const tft::Tfn& r : Rates(static_cast<int>(state.range(0))))
    rates.push_back(r.peak());
  const tft::MissionTime t(1000);
  for (auto _ : state) benchmark::DoNotOptimize(tft::CrispPand(rates, t));
}
BENCHMARK(BM_CrispPand)->DenseRange(2, 8, 2);

}  // namespace

BENCHMARK_MAIN();
