#include "tft/fuzzy.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "tft/error.hpp"

namespace tft {

namespace {

std::string Describe(double a, double b, double c) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

TriangularFuzzyNumber::TriangularFuzzyNumber(double lower, double peak,
                                             double upper)
    : lower_(lower), peak_(peak), upper_(upper) {
  if (!std::isfinite(lower) || !std::isfinite(peak) || !std::isfinite(upper))
    throw DomainError("fuzzy number has a non-finite component " +
                      Describe(lower, peak, upper));
  if (!(lower <= peak && peak <= upper))
    throw DomainError("fuzzy number components are not ordered " +
                      Describe(lower, peak, upper));
}

double TriangularFuzzyNumber::Membership(double x) const {
  if (x < lower_ || x > upper_) return 0;
  if (x == peak_) return 1;
  if (x < peak_) return (x - lower_) / (peak_ - lower_);
  return (upper_ - x) / (upper_ - peak_);
}

Tfn operator+(const Tfn& x, const Tfn& y) {
  return Tfn(x.lower() + y.lower(), x.peak() + y.peak(),
             x.upper() + y.upper());
}

Tfn operator-(const Tfn& x, const Tfn& y) {
  return Tfn(x.lower() - y.upper(), x.peak() - y.peak(),
             x.upper() - y.lower());
}

Tfn operator*(const Tfn& x, const Tfn& y) {
  if (x.lower() < 0 || y.lower() < 0)
    throw DomainError("fuzzy product requires non-negative operands");
  return Tfn(x.lower() * y.lower(), x.peak() * y.peak(),
             x.upper() * y.upper());
}

Tfn operator/(const Tfn& x, const Tfn& y) {
  if (!(y.lower() > 0))
    throw DomainError("fuzzy divisor support touches zero");
  if (x.lower() < 0)
    throw DomainError("fuzzy quotient requires a non-negative dividend");
  return Tfn(x.lower() / y.upper(), x.peak() / y.peak(),
             x.upper() / y.lower());
}

Tfn ExpScaled(const Tfn& x, double k) {
  if (k >= 0) {
    return Tfn(std::exp(k * x.lower()), std::exp(k * x.peak()),
               std::exp(k * x.upper()));
  }
  return Tfn(std::exp(k * x.upper()), std::exp(k * x.peak()),
             std::exp(k * x.lower()));
}

SpreadPercent::SpreadPercent(double value, bool allow_custom)
    : value_(value) {
  if (!(value > 0 && value < 100))
    throw DomainError("spread must lie in (0, 100) percent");
  if (!allow_custom && !IsStandard(value))
    throw DomainError("spread " + std::to_string(value) +
                      "% is not one of 15, 25, 50 (custom spreads must be "
                      "enabled explicitly)");
}

bool SpreadPercent::IsStandard(double value) {
  return value == 15 || value == 25 || value == 50;
}

Tfn Fuzzify(double rate, SpreadPercent spread) {
  if (!(rate > 0) || !std::isfinite(rate))
    throw DomainError("cannot fuzzify non-positive rate " +
                      std::to_string(rate));
  const double s = spread.fraction();
  return Tfn((1 - s) * rate, rate, (1 + s) * rate);
}

double DefuzzifyCentroid(const Tfn& x) {
  return (x.lower() + x.peak() + x.upper()) / 3;
}

double Distance(const Tfn& x, const Tfn& y) {
  const double da = x.lower() - y.lower();
  const double db = x.peak() - y.peak();
  const double dc = x.upper() - y.upper();
  return std::sqrt(da * da + db * db + dc * dc);
}

std::ostream& operator<<(std::ostream& os, const Tfn& x) {
  return os << "(" << x.lower() << ", " << x.peak() << ", " << x.upper()
            << ")";
}

}  // namespace tft
