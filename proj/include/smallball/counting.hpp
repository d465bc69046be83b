#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smallball/spectrum.hpp"

namespace smallball {

/// lambda -> N(lambda), either counted from a spectrum or given in closed
/// form on (0, lambda_max).
class CountingFunction {
 public:
  using Map = std::function<double(double)>;

  static CountingFunction empirical(Spectrum spectrum);
  /// `mass`, when given, is the antiderivative int_0^x N; otherwise it is
  /// computed by quadrature.
  static CountingFunction closed_form(Map phi, double lambda_max, Map mass = {});

  [[nodiscard]] double operator()(double lambda) const;
  /// int_0^x N(t) dt.
  [[nodiscard]] double mass(double x) const;
  [[nodiscard]] double lambda_max() const { return lambda_max_; }
  [[nodiscard]] const std::optional<Spectrum>& spectrum() const { return spectrum_; }

 private:
  std::optional<Spectrum> spectrum_;
  Map phi_;
  Map mass_;
  double lambda_max_ = 0.0;
};

struct GrowthRow {
  double h;
  double x;
  double ratio;  // M(h x) / M(x)
};

/// Finite-grid evidence for liminf_{x -> 0} M(h x) / M(x) > 1. The verdict is
/// heuristic: a liminf cannot be certified from finitely many points.
struct GrowthReport {
  std::vector<GrowthRow> rows;
  std::vector<double> min_ratio;  // per h, over the smallest third of x_grid
  bool pass = false;
  double margin = 0.0;
  std::string label = "heuristic";
};

GrowthReport check_growth_condition(const CountingFunction& cf, const std::vector<double>& h_grid,
                                    const std::vector<double>& x_grid, double margin = 0.01);

}  // namespace smallball
