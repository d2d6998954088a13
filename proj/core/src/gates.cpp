#include "tft/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "exp_divided_difference.hpp"
#include "tft/error.hpp"

namespace tft {

namespace {

constexpr int kMaxExpandedFactors = 16;  // 2^16 exponential terms

void RequireProbability(double p, const char* gate) {
  if (!(p >= 0 && p <= 1))
    throw DomainError(std::string(gate) + " input probability " +
                      std::to_string(p) + " lies outside [0, 1]");
}

void RequireNonEmpty(size_t n, const char* gate) {
  if (n == 0) throw DomainError(std::string(gate) + " gate has no inputs");
}

// Nodes 0, -r_last, -(r_last + r_prev), ...: the nested integral runs from
// the last event to occur inwards.
std::vector<double> PolesFirstToLast(std::span<const double> rates) {
  std::vector<double> poles;
  poles.reserve(rates.size() + 1);
  poles.push_back(0);
  double acc = 0;
  for (auto it = rates.rbegin(); it != rates.rend(); ++it) {
    acc -= *it;
    poles.push_back(acc);
  }
  return poles;
}

// prod(weights) * f[poles of rates] with f = exp(t x).
double PandComponent(std::span<const double> weights,
                     std::span<const double> rates, double t,
                     bool* perturbed) {
  double weight = 1;
  for (double w : weights) weight *= w;
  if (weight == 0) return 0;
  const std::vector<double> poles = PolesFirstToLast(rates);
  bool jitter = false;
  const double value =
      weight * detail::ExpDividedDifference(poles, t, &jitter);
  if (perturbed && jitter) *perturbed = true;
  return value;
}

// Snaps round-off sized ordering violations; anything larger is a misuse
// of the closed forms.
Tfn OrderedOrThrow(double lo, double mid, double hi, const char* gate) {
  const double tol = 1e-12 * std::max({std::abs(lo), std::abs(mid),
                                       std::abs(hi), 1e-300});
  if (lo > mid && lo - mid <= tol) lo = mid;
  if (mid > hi && mid - hi <= tol) hi = mid;
  if (!(lo <= mid && mid <= hi))
    throw InternalError(std::string(gate) +
                        " produced an unordered fuzzy probability (" +
                        std::to_string(lo) + ", " + std::to_string(mid) +
                        ", " + std::to_string(hi) + ")");
  return Tfn(lo, mid, hi);
}

Tfn Finish(double lo, double mid, double hi, const char* gate,
           const GateOptions& options, GateNotes* notes) {
  Tfn r = OrderedOrThrow(lo, mid, hi, gate);
  if (!options.clamp) return r;
  const double clo = std::clamp(r.lower(), 0.0, r.peak());
  const double chi = std::clamp(r.upper(), r.peak(), std::max(1.0, r.peak()));
  if (notes && (clo != r.lower() || chi != r.upper())) notes->clamped = true;
  return Tfn(clo, r.peak(), chi);
}

void RequireRate(const Tfn& r, const char* gate) {
  if (r.lower() < 0)
    throw DomainError(std::string(gate) + " input rate has a negative component");
}

// Integral over [0, t] of
//   w e^{-r x} prod_i (1 - k_i (1 - e^{-s_i x}))
// where factors are given as (k_i, s_i). Returns the exact value from the
// expanded sum of exponentials, or adaptive quadrature for wide products.
double PriorityIntegral(double w, double r,
                        std::span<const std::pair<double, double>> factors,
                        double t, GateNotes* notes) {
  if (w == 0 || t == 0) return 0;
  if (static_cast<int>(factors.size()) <= kMaxExpandedFactors) {
    struct Term {
      double coef;
      double rate;
    };
    std::vector<Term> terms{{w, r}};
    terms.reserve(size_t{1} << factors.size());
    for (const auto& [k, s] : factors) {
      const size_t n = terms.size();
      for (size_t i = 0; i < n; ++i) {
        terms.push_back({terms[i].coef * k, terms[i].rate + s});
        terms[i].coef *= 1 - k;
      }
    }
    double total = 0;
    for (const Term& term : terms) {
      if (term.coef == 0) continue;
      total += term.rate == 0 ? term.coef * t
                              : term.coef * -std::expm1(-term.rate * t) /
                                    term.rate;
    }
    return total;
  }
  if (notes) notes->quadrature = true;
  auto integrand = [&](double x) {
    double v = w * std::exp(-r * x);
    for (const auto& [k, s] : factors) v *= 1 + k * std::expm1(-s * x);
    return v;
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, t, 20, 1e-13);
}

}  // namespace

MissionTime::MissionTime(double hours) : hours_(hours) {
  if (!(hours >= 0) || !std::isfinite(hours))
    throw DomainError("mission time must be a finite value >= 0, got " +
                      std::to_string(hours));
}

PoleSequence::PoleSequence(std::vector<double> poles)
    : poles_(std::move(poles)) {
  if (poles_.empty()) throw DomainError("empty pole sequence");
  for (double p : poles_)
    if (!std::isfinite(p)) throw DomainError("non-finite pole");
}

PoleSequence PoleSequence::FromRates(std::span<const double> rates) {
  std::vector<double> poles{0.0};
  double acc = 0;
  for (double r : rates) {
    acc -= r;
    poles.push_back(acc);
  }
  return PoleSequence(std::move(poles));
}

bool PoleSequence::HasNearDuplicates() const {
  double scale = 0;
  for (double p : poles_) scale = std::max(scale, std::abs(p));
  for (size_t i = 0; i < poles_.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (std::abs(poles_[i] - poles_[j]) <= 1e-12 * scale) return true;
  return false;
}

double HeavisideSum(const PoleSequence& poles, MissionTime t) {
  if (poles.HasNearDuplicates())
    throw DegeneratePoleError(
        "Heaviside expansion needs pairwise distinct poles");
  return detail::ExpDividedDifference(poles.values(), t.hours());
}

double CrispAnd(std::span<const double> probabilities) {
  RequireNonEmpty(probabilities.size(), "AND");
  double p = 1;
  for (double x : probabilities) {
    RequireProbability(x, "AND");
    p *= x;
  }
  return p;
}

double CrispOr(std::span<const double> probabilities) {
  RequireNonEmpty(probabilities.size(), "OR");
  double q = 1;
  for (double x : probabilities) {
    RequireProbability(x, "OR");
    q *= 1 - x;
  }
  return 1 - q;
}

double CrispPand(std::span<const double> rates, MissionTime t,
                 GateNotes* notes) {
  RequireNonEmpty(rates.size(), "PAND");
  for (double r : rates)
    if (!(r > 0) || !std::isfinite(r))
      throw DomainError("PAND rates must be positive");
  bool perturbed = false;
  const double p = PandComponent(rates, rates, t.hours(), &perturbed);
  if (notes && perturbed) notes->perturbed_poles = true;
  return std::clamp(p, 0.0, 1.0);
}

double CrispPor(std::span<const double> rates, MissionTime t) {
  RequireNonEmpty(rates.size(), "POR");
  for (double r : rates)
    if (!(r > 0) || !std::isfinite(r))
      throw DomainError("POR rates must be positive");
  const double total = std::accumulate(rates.begin(), rates.end(), 0.0);
  return rates[0] * -std::expm1(-total * t.hours()) / total;
}

Tfn FuzzyAnd(std::span<const Tfn> probabilities) {
  RequireNonEmpty(probabilities.size(), "AND");
  double lo = 1, mid = 1, hi = 1;
  for (const Tfn& p : probabilities) {
    RequireProbability(p.lower(), "AND");
    RequireProbability(p.upper(), "AND");
    lo *= p.lower();
    mid *= p.peak();
    hi *= p.upper();
  }
  return Tfn(lo, mid, hi);
}

Tfn FuzzyOr(std::span<const Tfn> probabilities) {
  RequireNonEmpty(probabilities.size(), "OR");
  double lo = 1, mid = 1, hi = 1;
  for (const Tfn& p : probabilities) {
    RequireProbability(p.lower(), "OR");
    RequireProbability(p.upper(), "OR");
    lo *= 1 - p.lower();
    mid *= 1 - p.peak();
    hi *= 1 - p.upper();
  }
  return Tfn(1 - lo, 1 - mid, 1 - hi);
}

Tfn FuzzyPand(std::span<const Tfn> rates, MissionTime t,
              const GateOptions& options, GateNotes* notes) {
  RequireNonEmpty(rates.size(), "PAND");
  std::vector<double> a, b, c;
  for (const Tfn& r : rates) {
    RequireRate(r, "PAND");
    a.push_back(r.lower());
    b.push_back(r.peak());
    c.push_back(r.upper());
  }
  bool perturbed = false;
  const double h = t.hours();
  const double lo = PandComponent(a, c, h, &perturbed);
  const double mid = PandComponent(b, b, h, &perturbed);
  const double hi = PandComponent(c, a, h, &perturbed);
  if (notes && perturbed) notes->perturbed_poles = true;
  return Finish(lo, mid, hi, "PAND", options, notes);
}

Tfn FuzzyPor(std::span<const Tfn> rates, MissionTime t,
             const GateOptions& options, GateNotes* notes) {
  RequireNonEmpty(rates.size(), "POR");
  for (const Tfn& r : rates) RequireRate(r, "POR");
  const Tfn& first = rates[0];
  const double h = t.hours();

  double total_peak = 0;
  for (const Tfn& r : rates) total_peak += r.peak();
  const double mid =
      first.peak() == 0 ? 0
                        : first.peak() * -std::expm1(-total_peak * h) /
                              total_peak;

  // Competitors that can never occur contribute a survival factor of one.
  std::vector<std::pair<double, double>> lower_factors, upper_factors;
  bool lower_linear = false;
  for (const Tfn& r : rates.subspan(1)) {
    if (r.upper() == 0) continue;
    if (r.lower() == 0) {
      lower_linear = true;
    } else {
      lower_factors.emplace_back(r.upper() / r.lower(), r.lower());
    }
    upper_factors.emplace_back(r.lower() / r.upper(), r.upper());
  }
  if (first.upper() == 0 && !upper_factors.empty() && first.peak() != 0)
    throw DomainError("POR priority rate is zero");

  double lo;
  if (!lower_linear) {
    lo = PriorityIntegral(first.lower(), first.upper(), lower_factors, h,
                          notes);
  } else {
    // A competitor whose lower rate is zero: its factor degenerates to
    // 1 - c x, which is not an exponential; integrate numerically.
    if (notes) notes->quadrature = true;
    std::vector<Tfn> competitors(rates.begin() + 1, rates.end());
    auto integrand = [&](double x) {
      double v = first.lower() * std::exp(-first.upper() * x);
      for (const Tfn& r : competitors) {
        if (r.upper() == 0) continue;
        v *= r.lower() == 0
                 ? 1 - r.upper() * x
                 : 1 + r.upper() / r.lower() * std::expm1(-r.lower() * x);
      }
      return v;
    };
    lo = first.lower() == 0
             ? 0
             : boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                   integrand, 0.0, h, 20, 1e-13);
  }
  const double hi =
      PriorityIntegral(first.upper(), first.lower(), upper_factors, h, notes);
  return Finish(lo, mid, hi, "POR", options, notes);
}

Tfn RateToProbability(const Tfn& rate, MissionTime t) {
  RequireRate(rate, "rate conversion");
  const double h = t.hours();
  return Tfn(-std::expm1(-rate.lower() * h), -std::expm1(-rate.peak() * h),
             -std::expm1(-rate.upper() * h));
}

Tfn ProbabilityToRate(const Tfn& probability, MissionTime t, bool saturate) {
  const double h = t.hours();
  if (!(h > 0))
    throw DomainError("probability to rate conversion needs t > 0");
  auto convert = [&](double p) {
    if (p >= kSaturatedProbability) {
      if (!saturate)
        throw SaturationError(
            "probability " + std::to_string(p) +
            " is too close to 1 to convert into a failure rate (enable "
            "clamping to saturate)");
      p = kSaturatedProbability;
    }
    if (p < 0) {
      if (!saturate)
        throw DomainError("negative probability " + std::to_string(p) +
                          " cannot be converted into a failure rate");
      p = 0;
    }
    return -std::log1p(-p) / h;
  };
  return Tfn(convert(probability.lower()), convert(probability.peak()),
             convert(probability.upper()));
}

}  // namespace tft
