#include "smallball/saddle.hpp"

#include <cmath>
#include <numbers>

#include "smallball/errors.hpp"

namespace smallball {

namespace {

double checked(const series::Sum<double>& s, const char* what) {
  if (!(s.bound <= kFunctionalRelTol * std::abs(s.value)) && s.bound > 1e-300)
    throw TruncationError(std::string("laplace_functionals: tail of ") + what + " not certified to 1e-10");
  return s.value;
}

}  // namespace

LaplaceFunctionals laplace_functionals(const Spectrum& spectrum, double u) {
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("laplace_functionals: u must be >= 0");
  LaplaceFunctionals out;
  const double tu = 2.0 * u;
  out.L = checked(spectrum.sum([tu](double l) { return -0.5 * std::log1p(tu * l); }), "L");
  out.L1 = checked(spectrum.sum([tu](double l) { return -l / (1.0 + tu * l); }), "L'");
  out.L2 = checked(spectrum.sum([tu](double l) {
                     const double d = l / (1.0 + tu * l);
                     return 2.0 * d * d;
                   }),
                   "L''");
  return out;
}

SaddleState solve_saddle(const Spectrum& spectrum, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("solve_saddle: r must be positive");
  const double total = spectrum.total().value;
  if (!(r < total))
    throw OutOfRegimeError("solve_saddle: r = " + std::to_string(r) + " is not below sum lambda_n = " +
                           std::to_string(total) + "; the small-deviation regime ends there");

  // g(u) = L'(u) + r increases from r - sum lambda < 0 to r.
  double lo = 0.0;
  double hi = 1.0 / total;
  LaplaceFunctionals f = laplace_functionals(spectrum, hi);
  while (f.L1 + r <= 0.0) {
    lo = hi;
    hi *= 2.0;
    f = laplace_functionals(spectrum, hi);
  }
  double u = hi;
  for (int it = 0; it < 200; ++it) {
    const double g = f.L1 + r;
    if (std::abs(g) <= kSaddleRelTol * r) break;
    (g < 0.0 ? lo : hi) = u;
    double next = u - g / f.L2;
    if (!(next > lo && next < hi)) next = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
    if (next == u) break;
    u = next;
    f = laplace_functionals(spectrum, u);
  }
  if (!(std::abs(f.L1 + r) <= kSaddleRelTol * r))
    throw OutOfRegimeError("solve_saddle: residual " + std::to_string(std::abs(f.L1 + r) / r) +
                           " did not reach 1e-10 at r = " + std::to_string(r));
  return {r, u, f.L, f.L1, f.L2};
}

SmallBallEstimate small_ball_estimate(const Spectrum& spectrum, double r) {
  SmallBallEstimate out;
  out.state = solve_saddle(spectrum, r);
  const SaddleState& s = out.state;
  out.r = r;
  out.log_probability = s.L + s.u * r - 0.5 * std::log(2.0 * std::numbers::pi * s.u * s.u * s.L2);
  out.probability = std::exp(out.log_probability);
  out.err = std::abs(s.L1 + r);
  return out;
}

double log_small_ball_estimate(const Spectrum& spectrum, double r) {
  const SaddleState s = solve_saddle(spectrum, r);
  return s.L + s.u * r;
}

}  // namespace smallball
