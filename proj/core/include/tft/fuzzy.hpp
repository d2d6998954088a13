/// @file fuzzy.hpp
/// Triangular fuzzy numbers and the arithmetic used to propagate them
/// through temporal fault trees.
#pragma once

#include <iosfwd>

namespace tft {

/// Fuzzy number with a triangular membership function rising linearly
/// from `lower` to `peak` and falling back to zero at `upper`.
///
/// The ordering lower <= peak <= upper is enforced at construction and
/// preserved by every operation in this header. A crisp value x is the
/// degenerate triple (x, x, x).
class TriangularFuzzyNumber {
 public:
  /// The crisp zero (0, 0, 0).
  constexpr TriangularFuzzyNumber() = default;

  /// @throws DomainError  Non-finite or unordered components.
  TriangularFuzzyNumber(double lower, double peak, double upper);

  static TriangularFuzzyNumber Crisp(double value) {
    return TriangularFuzzyNumber(value, value, value);
  }

  double lower() const { return lower_; }
  double peak() const { return peak_; }
  double upper() const { return upper_; }

  bool is_crisp() const { return lower_ == peak_ && peak_ == upper_; }

  /// Membership grade of x.
  double Membership(double x) const;

  bool operator==(const TriangularFuzzyNumber&) const = default;

 private:
  double lower_ = 0;
  double peak_ = 0;
  double upper_ = 0;
};

using Tfn = TriangularFuzzyNumber;

/// (a1+b1, a2+b2, a3+b3).
Tfn operator+(const Tfn& x, const Tfn& y);

/// Interval-style difference (a1-b3, a2-b2, a3-b1); keeps the result ordered.
Tfn operator-(const Tfn& x, const Tfn& y);

/// Componentwise product, defined for non-negative operands only.
/// @throws DomainError  Either operand has a negative lower component.
Tfn operator*(const Tfn& x, const Tfn& y);

/// (a1/b3, a2/b2, a3/b1).
/// @throws DomainError  Divisor support touches zero, or negative dividend.
Tfn operator/(const Tfn& x, const Tfn& y);

/// e^{k x}, with endpoints swapped when k < 0 so the result stays ordered.
Tfn ExpScaled(const Tfn& x, double k);

/// Fuzzification spread in percent. The values 15, 25 and 50 are always
/// accepted; any other value in (0, 100) needs `allow_custom`.
class SpreadPercent {
 public:
  /// @throws DomainError  Value outside (0, 100), or non-standard value
  ///                      without `allow_custom`.
  explicit SpreadPercent(double value, bool allow_custom = false);

  double value() const { return value_; }
  double fraction() const { return value_ / 100.0; }

  static bool IsStandard(double value);

  bool operator==(const SpreadPercent&) const = default;

 private:
  double value_;
};

/// ((1 - s) rate, rate, (1 + s) rate) with s the spread fraction.
/// @throws DomainError  rate <= 0 or not finite.
Tfn Fuzzify(double rate, SpreadPercent spread);

/// Centroid of the membership function, (a + b + c) / 3.
double DefuzzifyCentroid(const Tfn& x);

/// Euclidean distance between the two triples viewed as points of R^3.
double Distance(const Tfn& x, const Tfn& y);

std::ostream& operator<<(std::ostream& os, const Tfn& x);

}  // namespace tft
