#include "smallball/exactdist.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "smallball/errors.hpp"
#include "smallball/kernels.hpp"
#include "smallball/quadrature.hpp"

namespace smallball {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxTruncation = std::size_t{1} << 22;

struct PhaseLog {
  double phase = 0.0;  // sum atan(lambda u)
  double log = 0.0;    // sum log1p((lambda u)^2)
  PhaseLog& operator+=(const PhaseLog& o) {
    phase += o.phase;
    log += o.log;
    return *this;
  }
};

PhaseLog phase_log(const std::vector<double>& lambdas, double u) {
  return kernels::blocked_sum<PhaseLog>(lambdas.size(), [&](std::size_t i) {
    const double x = lambdas[i] * u;
    return PhaseLog{std::atan(x), std::log1p(x * x)};
  });
}

/// Bound on int_U^inf du / (u^p rho(u)) from rho(u) >= prod_{lambda U >= 1} (lambda u)^(1/2).
double imhof_remainder(const std::vector<double>& lambdas, double U, double power) {
  double log_prod = 0.0;
  double k = 0.0;
  for (double lambda : lambdas) {
    if (lambda * U < 1.0) break;
    log_prod += 0.5 * std::log(lambda * U);
    k += 1.0;
  }
  const double decay = 0.5 * k + power - 1.0;
  if (decay <= 0.0) return INFINITY;
  return std::pow(U, 1.0 - power) * std::exp(-log_prod) / decay;
}

/// log(1 + z) without cancellation for small |z|.
std::complex<double> log1p(std::complex<double> z) {
  const double x = z.real(), y = z.imag();
  return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

void check_threshold(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("threshold r must be positive and finite");
}

/// Density of Q_N at r, used only to size the truncation error.
double imhof_density(const std::vector<double>& lambdas, double r) {
  auto integrand = [&](double u) {
    const PhaseLog pl = phase_log(lambdas, u);
    const double theta = 0.5 * pl.phase - 0.5 * r * u;
    return std::cos(theta) * std::exp(-0.25 * pl.log);
  };
  quad::OscillatoryOptions opt;
  opt.abs_tol = 1e-8;
  opt.rel_tol = 1e-4;
  opt.max_periods = 2000;
  const auto res = quad::integrate_oscillatory(
      integrand, 2.0 * kPi / r, 0.25 / lambdas.front(),
      [&](double U) { return imhof_remainder(lambdas, U, 0.0); }, opt);
  return std::max(0.0, res.value / (2.0 * kPi));
}

}  // namespace

std::size_t truncation_for(const Spectrum& spectrum, double r) {
  check_threshold(r);
  if (!spectrum.has_tail()) return spectrum.head().size();
  const std::size_t N = spectrum.truncation_index(kTruncationFraction * r);
  if (N > kMaxTruncation)
    throw TruncationError("truncation rule needs " + std::to_string(N) + " terms (limit " +
                          std::to_string(kMaxTruncation) + ")");
  return std::max<std::size_t>(N, 1);
}

CdfResult cdf_inversion(const Spectrum& spectrum, double r, double tol) {
  check_threshold(r);
  if (!(tol >= 1e-12)) throw DomainError("cdf_inversion: tol must be at least 1e-12");
  const std::size_t N = truncation_for(spectrum, r);
  const std::vector<double> lambdas = spectrum.leading(N);
  const double tail = spectrum.has_tail() ? spectrum.tail_mass(N).value : 0.0;

  auto integrand = [&](double u) {
    const PhaseLog pl = phase_log(lambdas, u);
    const double theta = 0.5 * pl.phase - 0.5 * r * u;
    return std::sin(theta) / (u * std::exp(0.25 * pl.log));
  };
  quad::OscillatoryOptions opt;
  opt.abs_tol = 0.5 * kPi * tol;
  opt.panel.rel_tol = 1e-13;
  const auto res = quad::integrate_oscillatory(
      integrand, 2.0 * kPi / r, 0.25 / lambdas.front(),
      [&](double U) { return imhof_remainder(lambdas, U, 1.0); }, opt);

  CdfResult out;
  out.r = r;
  out.method = "inversion";
  out.truncation_N = N;
  out.tail_mass = tail;
  const double p = 0.5 - res.value / kPi;
  out.probability = std::clamp(p, 0.0, 1.0);
  out.err = res.error / kPi;
  if (tail > 0.0) {
    // Q = Q_N + T with E T = tail and Var T <= 2 lambda_{N+1} tail: the
    // shift costs about tail * f(r), plus curvature through E T^2.
    const double f1 = imhof_density(lambdas, r);
    const double f0 = imhof_density(lambdas, r - tail);
    const double second = tail * tail + 2.0 * spectrum.value(N + 1) * tail;
    out.err += tail * std::max(f0, f1) + 0.5 * std::abs(f1 - f0) / tail * second;
  }
  if (out.probability < kInversionFloor)
    throw PrecisionLimitError("cdf_inversion: probability at r = " + std::to_string(r) +
                              " is below 1e-10 where the inversion integral cancels; use the contour or "
                              "saddle estimate");
  out.log_probability = std::log(out.probability);
  return out;
}

CdfResult cdf_contour(const Spectrum& spectrum, double r, double rel_tol) {
  check_threshold(r);
  const double total = spectrum.total().value;

  // Abscissa c > 0 with sum lambda / (1 + 2 c lambda) = r when r is below the
  // mean; any c > 0 is exact, this one keeps the integrand free of cancellation.
  auto slope = [&](double c) { return spectrum.sum([c](double l) { return l / (1.0 + 2.0 * c * l); }).value; };
  double c = 1.0 / r;
  if (r < total) {
    double hi = 1.0 / total;
    while (slope(hi) > r) hi *= 2.0;
    double lo = hi / 2.0;
    while (slope(lo) <= r) lo /= 2.0;
    for (int i = 0; i < 60; ++i) {
      const double mid = std::sqrt(lo * hi);
      (slope(mid) > r ? lo : hi) = mid;
    }
    c = std::sqrt(lo * hi);
  }

  auto log_laplace = [&](std::complex<double> s) {
    return spectrum.sum([s](double l) { return -0.5 * log1p(2.0 * s * l); }).value;
  };
  const double anchor = c * r + log_laplace({c, 0.0}).real();
  const double curvature = spectrum.sum([c](double l) {
    const double d = l / (1.0 + 2.0 * c * l);
    return 2.0 * d * d;
  }).value;

  auto integrand = [&](double y) {
    const std::complex<double> s{c, y};
    return std::real(std::exp(s * r + log_laplace(s) - anchor) / s);
  };
  // |integrand| <= (1/y) prod_{a_n <= Y} (a_n / y)^(1/2), a_n = c + 1/(2 lambda_n).
  auto remainder = [&](double Y) -> double {
    double log_prod = 0.0;
    double k = 0.0;
    for (std::size_t n = 1; n <= 200000; ++n) {
      if (!spectrum.has_tail() && n > spectrum.head().size()) break;
      const double a = c + 0.5 / spectrum.value(n);
      if (a > Y) break;
      log_prod += 0.5 * std::log(a / Y);
      k += 1.0;
    }
    if (k == 0.0) return INFINITY;
    return (2.0 / k) * std::exp(log_prod);
  };
  quad::OscillatoryOptions opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = rel_tol;
  opt.panel.rel_tol = 0.1 * rel_tol;
  opt.panel.abs_tol = 0.0;
  const auto res = quad::integrate_oscillatory(integrand, kPi / r, 0.25 / std::sqrt(curvature), remainder, opt);
  if (!(res.value > 0.0))
    throw PrecisionLimitError("cdf_contour: contour integral did not resolve a positive probability");

  CdfResult out;
  out.r = r;
  out.method = "contour";
  out.truncation_N = spectrum.has_tail() ? 0 : spectrum.head().size();
  out.tail_mass = 0.0;
  out.log_probability = anchor + std::log(res.value / kPi);
  out.probability = std::min(1.0, std::exp(out.log_probability));
  out.err = out.probability * (res.error / res.value);
  return out;
}

CdfResult cdf_monte_carlo(const Spectrum& spectrum, double r, std::uint64_t n_samples, std::uint64_t seed) {
  check_threshold(r);
  if (n_samples < 1000) throw UsageError("cdf_monte_carlo: need at least 1000 samples");
  const std::size_t N = truncation_for(spectrum, r);
  const std::vector<double> lambdas = spectrum.leading(N);
  const std::uint64_t hits = kernels::count_at_most(lambdas, n_samples, seed, r);
  const double n = static_cast<double>(n_samples);
  CdfResult out;
  out.r = r;
  out.method = "monte_carlo";
  out.truncation_N = N;
  out.tail_mass = spectrum.has_tail() ? spectrum.tail_mass(N).value : 0.0;
  out.probability = static_cast<double>(hits) / n;
  out.log_probability = std::log(out.probability);
  out.err = std::sqrt(out.probability * (1.0 - out.probability) / n);
  return out;
}

std::vector<double> sample_norm_squared(const Spectrum& spectrum, std::uint64_t n_samples, std::uint64_t seed,
                                        std::optional<std::size_t> truncate) {
  if (n_samples == 0) throw UsageError("sample_norm_squared: need at least one sample");
  std::size_t N = 0;
  if (truncate) {
    N = *truncate;
  } else if (!spectrum.has_tail()) {
    N = spectrum.head().size();
  } else {
    throw TruncationError("sample_norm_squared: an infinite spectrum needs an explicit truncation");
  }
  if (N == 0) throw UsageError("sample_norm_squared: truncation must keep at least one term");
  return kernels::sample_quadratic_form(spectrum.leading(N), n_samples, seed);
}

}  // namespace smallball
