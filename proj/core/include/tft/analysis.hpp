/// @file analysis.hpp
/// Bottom-up fuzzy quantification of a fault tree over mission times and
/// the fuzzy importance measure of its basic events.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tft/error.hpp"
#include "tft/gates.hpp"
#include "tft/tree.hpp"

namespace tft {

struct AnalysisConfig {
  std::vector<double> times;  ///< hours, strictly increasing
  double spread = 15;         ///< percent, default for crisp rates
  bool custom_spread = false;
  /// Clamp gate bounds into [0, 1] and saturate rate conversion.
  bool clamp = false;
  bool importance = false;
  std::optional<double> importance_time;

  /// Defaults taken from the tree's directive.
  static AnalysisConfig FromTree(const FaultTree& tree);

  /// @throws DomainError  Empty or unordered times, bad spread, or
  ///                      importance requested without a time.
  void Check() const;
};

/// Forces one basic event's probability to 1 (occurred) or 0.
struct Forcing {
  std::string event;
  bool occurred = true;
};

/// Fuzzy top-event probability at t.
///
/// AND and OR gates combine probabilities. PAND and POR gates combine
/// rates: a basic-event child contributes its fuzzy rate, any other child
/// is converted with -ln(1 - P) / t. Gate-level notes (pole perturbation,
/// clamping, quadrature) are appended to `notes` as warnings.
///
/// @throws SaturationError  A probability feeding a temporal gate reached
///                          1 and clamping is off.
/// @throws DomainError      Other numeric failure; the message names the
///                          gate.
Tfn Evaluate(const FaultTree& tree, MissionTime t, const AnalysisConfig& config,
             const std::optional<Forcing>& forcing = std::nullopt,
             std::vector<Diagnostic>* notes = nullptr);

/// Crisp top-event probability with every basic event at its peak rate.
double EvaluatePeak(const FaultTree& tree, MissionTime t, bool clamp = false);

struct SweepEntry {
  double t = 0;
  Tfn te;
  double defuzzified = 0;  ///< centroid of te
  double peak = 0;         ///< te.peak()
};

struct ImportanceRow {
  std::string event_id;
  double fim = 0;
  int rank = 0;
};

struct AnalysisReport {
  std::string tree_name;
  std::vector<SweepEntry> entries;
  std::optional<double> importance_time;
  std::vector<ImportanceRow> importance;  ///< empty unless requested
  std::vector<Diagnostic> diagnostics;
};

/// Evaluates every configured time point and, if requested, the importance
/// table at config.importance_time. Time points and forcings are evaluated
/// concurrently; the result does not depend on scheduling.
AnalysisReport Sweep(const FaultTree& tree, const AnalysisConfig& config);

/// Euclidean distance between the top-event probabilities with `event`
/// forced to occur and forced not to occur. Conversions of forced
/// probabilities into rates always saturate.
/// @throws DomainError  Unknown event.
double FuzzyImportance(const FaultTree& tree, const std::string& event,
                       MissionTime t, const AnalysisConfig& config);

/// Sorts by descending FIM (stable for ties) and assigns dense ranks;
/// values within 1e-6 of a group's first value share its rank.
std::vector<ImportanceRow> RankEvents(std::vector<ImportanceRow> fims);

/// FIM of every basic event in declaration order, ranked.
std::vector<ImportanceRow> ImportanceTable(const FaultTree& tree,
                                           MissionTime t,
                                           const AnalysisConfig& config);

inline constexpr double kRankTieTolerance = 1e-6;

}  // namespace tft
