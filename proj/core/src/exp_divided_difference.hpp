// Divided differences of x -> exp(t x), the quantity behind every
// Heaviside (partial-fraction) expansion of a nested exponential integral.
#pragma once

#include <span>

namespace tft::detail {

/// Returns f[x_0, ..., x_n] for f(x) = exp(t x). Nodes may repeat (the
/// confluent limit is returned). Evaluated through the exponential of a
/// shifted bidiagonal matrix whose entries are all non-negative, so no
/// cancellation occurs however close the nodes are. When the nodes span
/// more than kMaxSpread in units of 1/t the partial-fraction sum is used
/// instead, with coincident nodes separated by a relative 1e-9 jitter.
///
/// `perturbed`, when given, is set if that jitter was applied.
double ExpDividedDifference(std::span<const double> nodes, double t,
                            bool* perturbed = nullptr);

/// Partial-fraction sum  sum_k exp(t x_k) / prod_{j != k} (x_k - x_j).
/// Requires distinct nodes.
double PartialFractionSum(std::span<const double> nodes, double t);

inline constexpr double kMaxSpread = 500.0;

}  // namespace tft::detail
