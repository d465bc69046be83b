#include "smallball/quadrature.hpp"

#include <numbers>

#include "smallball/errors.hpp"

namespace smallball::quad {

GaussLegendreRule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw UsageError("Gauss-Legendre rule needs at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::size_t m = (n + 1) / 2;
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < m; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        const double dj = static_cast<double>(j);
        p0 = ((2.0 * dj - 1.0) * z * p1 - (dj - 1.0) * p2) / dj;
      }
      dp = dn * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = centre - half * z;
    rule.nodes[n - 1 - i] = centre + half * z;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = centre;
  return rule;
}

void WynnEpsilon::push(double partial_sum) { sums_.push_back(partial_sum); }

double WynnEpsilon::estimate() const {
  const std::size_t n = sums_.size();
  if (n < 3) return sums_.empty() ? 0.0 : sums_.back();
  // Rebuild the table over the most recent terms; the sequences seen here
  // converge well before the window fills.
  const std::size_t window = std::min<std::size_t>(n, 41);
  std::vector<double> prev(window + 1, 0.0);  // eps_{k-1}
  std::vector<double> cur(sums_.end() - static_cast<std::ptrdiff_t>(window), sums_.end());
  double best = cur.back();
  for (std::size_t k = 1; k < window; ++k) {
    std::vector<double> next(window - k);
    bool degenerate = false;
    for (std::size_t i = 0; i + k < window; ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (diff == 0.0) {
        degenerate = true;
        break;
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (degenerate) break;
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0) best = cur.back();
  }
  return best;
}

}  // namespace smallball::quad
