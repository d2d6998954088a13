// Seeded random inputs for property tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tft/fuzzy.hpp"

namespace tft::testing {

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  double LogUniform(double lo, double hi) {
    return std::exp(Uniform(std::log(lo), std::log(hi)));
  }

  int Int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  std::uint64_t Bits() { return rng_(); }

  std::vector<double> Rates(int n, double lo = 1e-6, double hi = 1e-2) {
    std::vector<double> out(n);
    for (double& r : out) r = LogUniform(lo, hi);
    return out;
  }

  // Ordered triple with lower >= lo.
  Tfn Triple(double lo, double hi) {
    double v[3] = {Uniform(lo, hi), Uniform(lo, hi), Uniform(lo, hi)};
    std::sort(v, v + 3);
    return Tfn(v[0], v[1], v[2]);
  }

  // Fuzzy rate around a log-uniform peak with random asymmetric spreads.
  Tfn FuzzyRate(double lo = 1e-6, double hi = 1e-2, double max_spread = 0.6) {
    const double peak = LogUniform(lo, hi);
    const double down = Uniform(0, max_spread), up = Uniform(0, max_spread);
    return Tfn(peak * (1 - down), peak, peak * (1 + up));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double RelativeError(double actual, double expected) {
  if (expected == 0) return std::abs(actual);
  return std::abs(actual - expected) / std::abs(expected);
}

inline std::string DataPath(const std::string& name) {
  return std::string(TFT_DATA_DIR) + "/" + name;
}

}  // namespace tft::testing
