/// @file report.hpp
/// CSV and JSON rendering of analysis reports, and comparison of a sweep
/// against reference values.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tft/analysis.hpp"

namespace tft {

/// Number formatting used by every report: 8 significant digits.
std::string FormatValue(double v);

/// t,te_lower,te_peak,te_upper,te_defuzzified
std::string SweepCsv(const AnalysisReport& report);

/// event_id,fim,rank
std::string ImportanceCsv(const AnalysisReport& report);

/// Whole report, including diagnostics, as a JSON document.
std::string ReportJson(const AnalysisReport& report);

/// Which scalar of the fuzzy top event is compared with crisp numbers.
enum class Interpretation { kCentroid, kPeak };

std::string_view ToString(Interpretation i);

/// One row of a reference table: columns t, petri_net, bayesian_network,
/// proposed.
struct ReferenceRow {
  double t = 0;
  double petri_net = 0;
  double bayesian_network = 0;
  double proposed = 0;
};

/// Parses a reference CSV. Blank lines and lines starting with '#' are
/// ignored; the first remaining line must be the header.
/// @throws ParseError  Malformed header, row or number.
std::vector<ReferenceRow> ParseReferenceCsv(std::string_view text);

struct ComparisonRow {
  double t = 0;
  double computed = 0;
  ReferenceRow reference;
  /// computed - reference, per column.
  double delta_petri_net = 0;
  double delta_bayesian_network = 0;
  double delta_proposed = 0;
};

/// Pairs sweep entries with reference rows of the same time.
/// @throws DomainError  No entry shares a time with the reference.
std::vector<ComparisonRow> Compare(const AnalysisReport& report,
                                   const std::vector<ReferenceRow>& reference,
                                   Interpretation interpretation);

/// Relative delta, delta / reference; zero when the reference is zero.
double RelativeDelta(double delta, double reference);

/// t,computed,petri_net,delta_petri_net,rel_delta_petri_net,... for the
/// three reference columns.
std::string ComparisonCsv(const std::vector<ComparisonRow>& rows);

}  // namespace tft
