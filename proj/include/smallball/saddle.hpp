#pragma once

// Laplace-transform asymptotics of P{Q <= r}: with
//   L(u) = -(1/2) sum ln(1 + 2 u lambda_n)
// and u(r) the root of L'(u) + r = 0,
//   P{Q <= r} ~ exp(L(u) + u r) / sqrt(2 pi u^2 L''(u))   as r -> 0.

#include <string>

#include "smallball/spectrum.hpp"

namespace smallball {

struct LaplaceFunctionals {
  double L = 0.0;
  double L1 = 0.0;  // L'(u)  = -sum lambda / (1 + 2 u lambda)
  double L2 = 0.0;  // L''(u) =  sum 2 lambda^2 / (1 + 2 u lambda)^2
};

struct SaddleState {
  double r = 0.0;
  double u = 0.0;
  double L = 0.0;
  double L1 = 0.0;
  double L2 = 0.0;
};

struct SmallBallEstimate {
  double r = 0.0;
  double probability = 0.0;
  double log_probability = 0.0;
  std::string method = "saddle";
  /// |L'(u) + r| at the returned root; the formula itself carries no error bar.
  double err = 0.0;
  SaddleState state;
};

/// Relative accuracy demanded of the series tails of L, L', L''.
inline constexpr double kFunctionalRelTol = 1e-10;
/// Relative residual |L'(u) + r| / r accepted by solve_saddle.
inline constexpr double kSaddleRelTol = 1e-10;

LaplaceFunctionals laplace_functionals(const Spectrum& spectrum, double u);
SaddleState solve_saddle(const Spectrum& spectrum, double r);
SmallBallEstimate small_ball_estimate(const Spectrum& spectrum, double r);
/// L(u) + u r at the saddle: the log-level estimate of P{Q <= r}.
double log_small_ball_estimate(const Spectrum& spectrum, double r);

}  // namespace smallball
