/// @file simulation.hpp
/// Monte Carlo estimate of the top-event probability, sampling exponential
/// failure times directly. Used as an independent check of the closed
/// forms.
#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "tft/tree.hpp"

namespace tft {

struct SimulationConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  double t = 0;  ///< mission time, hours

  /// @throws DomainError  samples == 0 or invalid time.
  void Check() const;
};

struct SimulationEstimate {
  double probability = 0;
  double std_error = 0;  ///< sqrt(p (1 - p) / n)
  std::uint64_t samples = 0;
};

/// Per-event stream key derived from the seed and the event id, so that
/// adding events does not change the draws of existing ones.
std::uint64_t StreamKey(std::uint64_t seed, std::string_view event_id);

/// Failure time of draw `index` in stream `key` for an exponential rate.
double SampleFailureTime(std::uint64_t key, std::uint64_t index, double rate);

/// Fraction of samples in which the top event occurs by t.
///
/// Each basic event gets one failure time per sample (peak rate). A node
/// occurs at: AND, the latest child; OR, the earliest; PAND, the latest if
/// the children occur strictly in order, else never; POR, the first
/// child's time if it occurs by t strictly before every other child. A
/// shared event has the same time wherever it appears.
SimulationEstimate SimulateTree(const FaultTree& tree,
                                const SimulationConfig& config);

/// Single gate over leaves e1..en with the given rates.
/// @throws DomainError  Empty or non-positive rates, or a temporal gate
///                      with fewer than two inputs.
SimulationEstimate SimulateGate(GateKind kind, std::span<const double> rates,
                                const SimulationConfig& config);

}  // namespace tft
