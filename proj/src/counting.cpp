#include "smallball/counting.hpp"

#include <algorithm>
#include <cmath>

#include "smallball/errors.hpp"
#include "smallball/quadrature.hpp"

namespace smallball {

CountingFunction CountingFunction::empirical(Spectrum spectrum) {
  CountingFunction cf;
  cf.lambda_max_ = INFINITY;
  cf.spectrum_ = std::move(spectrum);
  return cf;
}

CountingFunction CountingFunction::closed_form(Map phi, double lambda_max, Map mass) {
  if (!phi) throw UsageError("counting function: empty map");
  if (!(lambda_max > 0.0)) throw DomainError("counting function: lambda_max must be positive");
  CountingFunction cf;
  cf.phi_ = std::move(phi);
  cf.mass_ = std::move(mass);
  cf.lambda_max_ = lambda_max;
  return cf;
}

double CountingFunction::operator()(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("counting function: lambda must be positive");
  if (spectrum_) return static_cast<double>(spectrum_->counting(lambda));
  if (lambda >= lambda_max_) throw DomainError("counting function: lambda outside the validity range");
  return phi_(lambda);
}

double CountingFunction::mass(double x) const {
  if (!(x > 0.0)) throw DomainError("counting function: x must be positive");
  if (spectrum_) return spectrum_->cumulative_mass(x).value;
  if (x > lambda_max_) throw DomainError("counting function: x outside the validity range");
  if (mass_) return mass_(x);
  // t = x e^{-w}: int_0^x N(t) dt = int_0^inf N(x e^{-w}) x e^{-w} dw.
  auto integrand = [&](double w) {
    const double t = x * std::exp(-w);
    return t > 0.0 ? phi_(t) * t : 0.0;
  };
  quad::Options opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-12;
  return quad::integrate_to_infinity(integrand, 0.0, opt).value;
}

GrowthReport check_growth_condition(const CountingFunction& cf, const std::vector<double>& h_grid,
                                    const std::vector<double>& x_grid, double margin) {
  if (h_grid.empty() || x_grid.empty()) throw UsageError("growth check: h_grid and x_grid must be non-empty");
  for (double h : h_grid)
    if (!(h > 1.0)) throw DomainError("growth check: every h must exceed 1");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > 0.0)) throw DomainError("growth check: x values must be positive");
    if (i > 0 && !(x_grid[i] < x_grid[i - 1])) throw DomainError("growth check: x_grid must be decreasing");
  }
  GrowthReport report;
  report.margin = margin;
  report.pass = true;
  const std::size_t tail = std::max<std::size_t>(1, (x_grid.size() + 2) / 3);
  for (double h : h_grid) {
    double running = INFINITY;
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
      const double x = x_grid[i];
      const double ratio = cf.mass(h * x) / cf.mass(x);
      report.rows.push_back({h, x, ratio});
      if (i + tail >= x_grid.size()) running = std::min(running, ratio);
    }
    report.min_ratio.push_back(running);
    if (!(running > 1.0 + margin)) report.pass = false;
  }
  return report;
}

}  // namespace smallball
