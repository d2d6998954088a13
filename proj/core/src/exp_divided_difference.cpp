#include "exp_divided_difference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tft::detail {

namespace {

// Dense upper-triangular square matrix, row-major.
class UpperTriangular {
 public:
  explicit UpperTriangular(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

  double& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  double at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  int size() const { return n_; }

  UpperTriangular operator*(const UpperTriangular& o) const {
    UpperTriangular r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = i; k < n_; ++k) {
        const double v = at(i, k);
        if (v == 0) continue;
        for (int j = k; j < n_; ++j) r.at(i, j) += v * o.at(k, j);
      }
    return r;
  }

 private:
  int n_;
  std::vector<double> a_;
};

// exp(B) for an upper bidiagonal B with non-negative entries, by scaling
// and squaring around a Taylor series. Every partial sum and product is a
// sum of non-negative terms.
UpperTriangular ExpNonNegativeBidiagonal(std::span<const double> diag,
                                         double super) {
  const int n = static_cast<int>(diag.size());
  double norm = super;
  for (double d : diag) norm = std::max(norm, d + super);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const double scale = std::ldexp(1.0, -squarings);

  UpperTriangular c(n);
  for (int i = 0; i < n; ++i) {
    c.at(i, i) = diag[i] * scale;
    if (i + 1 < n) c.at(i, i + 1) = super * scale;
  }

  UpperTriangular sum(n);
  UpperTriangular term(n);
  for (int i = 0; i < n; ++i) {
    sum.at(i, i) = 1;
    term.at(i, i) = 1;
  }
  for (int k = 1; k < 200; ++k) {
    term = term * c;
    double worst = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double v = term.at(i, j) / k;
        term.at(i, j) = v;
        sum.at(i, j) += v;
        if (sum.at(i, j) > 0) worst = std::max(worst, v / sum.at(i, j));
      }
    if (k >= n && worst < 1e-17) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace

double PartialFractionSum(std::span<const double> nodes, double t) {
  double total = 0;
  for (size_t k = 0; k < nodes.size(); ++k) {
    double denom = 1;
    for (size_t j = 0; j < nodes.size(); ++j)
      if (j != k) denom *= nodes[k] - nodes[j];
    total += std::exp(nodes[k] * t) / denom;
  }
  return total;
}

double ExpDividedDifference(std::span<const double> nodes, double t,
                            bool* perturbed) {
  if (perturbed) *perturbed = false;
  const int order = static_cast<int>(nodes.size()) - 1;
  if (order < 0) return 0;
  if (order == 0) return std::exp(nodes[0] * t);
  if (t == 0) return 0;

  const auto [lo_it, hi_it] = std::minmax_element(nodes.begin(), nodes.end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  if (t * (hi - lo) <= kMaxSpread) {
    // f[x_0..x_n] = t^n * (exp(M))_{0,n}, M = bidiag(t x, 1).
    // Shift by t*lo so that the diagonal is non-negative.
    std::vector<double> diag(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) diag[i] = t * (nodes[i] - lo);
    const UpperTriangular e = ExpNonNegativeBidiagonal(diag, 1.0);
    const double entry = e.at(0, order);
    if (entry == 0) return 0;
    return std::exp(t * lo + order * std::log(t) + std::log(entry));
  }

  // Far-apart nodes: the partial-fraction sum is well conditioned except
  // for clusters of (nearly) coincident nodes, which are pulled apart.
  std::vector<double> x(nodes.begin(), nodes.end());
  const double scale = std::max(std::abs(lo), std::abs(hi));
  bool jittered = false;
  for (size_t k = 0; k < x.size(); ++k)
    for (size_t j = 0; j < k; ++j)
      if (std::abs(x[k] - x[j]) < 1e-12 * scale) {
        const double magnitude = x[k] != 0 ? std::abs(x[k]) : scale;
        x[k] = x[j] - 1e-9 * magnitude * static_cast<double>(k - j);
        jittered = true;
      }
  if (perturbed) *perturbed = jittered;
  return PartialFractionSum(x, t);
}

}  // namespace tft::detail
