/// @file gates.hpp
/// Crisp and fuzzy quantification of AND, OR, PAND and POR gates over
/// exponentially distributed basic events, plus rate/probability
/// conversion.
///
/// Ordering convention for temporal gates: inputs are listed from the
/// first event that must occur to the last. For POR the first input is
/// the priority event, which must occur before every other input (or
/// occur while the others do not occur at all).
#pragma once

#include <span>
#include <vector>

#include "tft/fuzzy.hpp"

namespace tft {

/// Mission time in hours, t >= 0.
class MissionTime {
 public:
  /// @throws DomainError  Negative or non-finite time.
  explicit MissionTime(double hours);

  double hours() const { return hours_; }

  auto operator<=>(const MissionTime&) const = default;

 private:
  double hours_;
};

/// Poles x_0 = 0, x_m = -(lambda_1 + ... + lambda_m) of the Laplace
/// transform of a nested exponential integral.
class PoleSequence {
 public:
  /// @throws DomainError  Empty sequence or non-finite pole.
  explicit PoleSequence(std::vector<double> poles);

  /// Builds 0, -r_0, -(r_0 + r_1), ... from `rates` in the given order.
  static PoleSequence FromRates(std::span<const double> rates);

  std::span<const double> values() const { return poles_; }
  size_t size() const { return poles_.size(); }

  /// True when two poles differ by less than 1e-12 * max |pole|.
  bool HasNearDuplicates() const;

 private:
  std::vector<double> poles_;
};

/// sum_k e^{x_k t} / prod_{j != k} (x_k - x_j).
/// @throws DegeneratePoleError  Two poles (nearly) coincide.
double HeavisideSum(const PoleSequence& poles, MissionTime t);

/// Options shared by the fuzzy gates.
struct GateOptions {
  /// Clamp the lower and upper components into [0, 1]. The peak is never
  /// clamped.
  bool clamp = false;
};

/// Side information reported by gate evaluation.
struct GateNotes {
  bool perturbed_poles = false;  ///< A near-duplicate pole was jittered.
  bool clamped = false;          ///< A bound was moved into [0, 1].
  bool quadrature = false;       ///< Numerical integration fallback used.
};

// ---------------------------------------------------------------------------
// Crisp gates

/// prod p_i.  @throws DomainError  Input outside [0, 1] or empty list.
double CrispAnd(std::span<const double> probabilities);

/// 1 - prod (1 - p_i).  @throws DomainError  Input outside [0, 1] or empty.
double CrispOr(std::span<const double> probabilities);

/// Probability that all events occur by t in the listed order.
/// @throws DomainError  Fewer than one rate, or a rate <= 0.
double CrispPand(std::span<const double> rates, MissionTime t,
                 GateNotes* notes = nullptr);

/// lambda_priority (1 - e^{-sum(lambda) t}) / sum(lambda), with the
/// priority event first in `rates`.
/// @throws DomainError  Empty list or a rate <= 0.
double CrispPor(std::span<const double> rates, MissionTime t);

// ---------------------------------------------------------------------------
// Fuzzy gates

/// Componentwise product.  @throws DomainError  Component outside [0, 1].
Tfn FuzzyAnd(std::span<const Tfn> probabilities);

/// Componentwise complement product.
/// @throws DomainError  Component outside [0, 1].
Tfn FuzzyOr(std::span<const Tfn> probabilities);

/// Fuzzy PAND over fuzzy rates (a_i, b_i, c_i):
///   lower = prod a_i * H(poles of c),
///   peak  = prod b_i * H(poles of b),
///   upper = prod c_i * H(poles of a).
/// A rate with a zero component makes the matching component zero.
/// @throws DomainError    Negative component or empty list.
/// @throws InternalError  The result came out unordered.
Tfn FuzzyPand(std::span<const Tfn> rates, MissionTime t,
              const GateOptions& options = {}, GateNotes* notes = nullptr);

/// Fuzzy POR over fuzzy rates, priority event first. The peak is the crisp
/// POR at peak rates; lower and upper integrate
///   a_p e^{-c_p x} prod_i (1 - (c_i/a_i)(1 - e^{-a_i x}))  and
///   c_p e^{-a_p x} prod_i (1 - (a_i/c_i)(1 - e^{-c_i x}))
/// over [0, t]. Products with at most 2^16 terms are expanded into sums
/// of exponentials and integrated exactly; larger ones fall back to
/// adaptive quadrature.
/// @throws DomainError    Negative component, zero priority rate with a
///                        non-zero competitor rate, or empty list.
/// @throws InternalError  The result came out unordered.
Tfn FuzzyPor(std::span<const Tfn> rates, MissionTime t,
             const GateOptions& options = {}, GateNotes* notes = nullptr);

// ---------------------------------------------------------------------------
// Conversions

/// 1 - e^{-lambda t}, componentwise.
/// @throws DomainError  Negative rate component.
Tfn RateToProbability(const Tfn& rate, MissionTime t);

/// Probability at which conversion to a rate saturates.
inline constexpr double kSaturatedProbability = 1.0 - 1e-12;

/// -ln(1 - P) / t, componentwise.
///
/// With `saturate` set, components above kSaturatedProbability are
/// treated as kSaturatedProbability and negative components as zero.
/// @throws SaturationError  A component >= kSaturatedProbability and
///                          `saturate` is off.
/// @throws DomainError      t == 0, or a negative component without
///                          `saturate`.
Tfn ProbabilityToRate(const Tfn& probability, MissionTime t,
                      bool saturate = false);

}  // namespace tft
