#pragma once

// Numerically exact distribution of Q = sum_n lambda_n xi_n^2 for standard
// normal xi_n: the ground truth the asymptotic formulas are checked against.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smallball/spectrum.hpp"

namespace smallball {

struct CdfResult {
  double r = 0.0;
  double probability = 0.0;
  /// ln(probability); finite even where probability underflows (contour route).
  double log_probability = 0.0;
  std::string method;
  double err = 0.0;
  /// Number of leading terms used, 0 when the full series (with its analytic
  /// tail) enters the computation.
  std::size_t truncation_N = 0;
  double tail_mass = 0.0;
};

/// Relative tail mass allowed by the truncation rule sum_{n>N} lambda_n <= 1e-3 r.
inline constexpr double kTruncationFraction = 1e-3;
/// Below this probability the real-axis inversion loses everything to cancellation.
inline constexpr double kInversionFloor = 1e-10;

/// Leading-term count N for a threshold r under the truncation rule.
std::size_t truncation_for(const Spectrum& spectrum, double r);

/// P{Q_N <= r} by real-axis inversion of the characteristic function:
///   P = 1/2 - (1/pi) int_0^inf sin(theta(u)) / (u rho(u)) du,
///   theta(u) = (1/2) sum atan(lambda_n u) - r u / 2,
///   rho(u)   = prod (1 + lambda_n^2 u^2)^(1/4).
/// `tol` is the absolute accuracy target (>= 1e-12). Throws
/// PrecisionLimitError when the answer falls below kInversionFloor.
CdfResult cdf_inversion(const Spectrum& spectrum, double r, double tol = 1e-10);

/// P{Q <= r} by inverting the Laplace transform along the vertical line
/// through the saddle point. Uses the full series and keeps relative accuracy
/// at any probability scale.
CdfResult cdf_contour(const Spectrum& spectrum, double r, double rel_tol = 1e-10);

/// Empirical frequency of Q_N <= r over n_samples draws (n_samples >= 1000),
/// with binomial standard error. Deterministic in (seed, n_samples).
CdfResult cdf_monte_carlo(const Spectrum& spectrum, double r, std::uint64_t n_samples, std::uint64_t seed);

/// Raw draws of Q_N. An infinite spectrum needs an explicit truncation.
std::vector<double> sample_norm_squared(const Spectrum& spectrum, std::uint64_t n_samples, std::uint64_t seed,
                                        std::optional<std::size_t> truncate = std::nullopt);

}  // namespace smallball
