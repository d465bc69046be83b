#include "smallball/slowvary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smallball/errors.hpp"
#include "smallball/quadrature.hpp"

namespace smallball {

namespace {

constexpr double kPi = std::numbers::pi;

void check_params(const RcAlphaParams& p) {
  if (!(std::isfinite(p.C) && p.C > 0.0)) throw DomainError("rc_alpha: C must be positive");
  if (!(std::isfinite(p.alpha) && p.alpha > 0.0)) throw DomainError("rc_alpha: alpha must be positive");
}

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

std::string to_string(SlowVaryingPhi::Form form) {
  switch (form) {
    case SlowVaryingPhi::Form::log_power: return "log_power";
    case SlowVaryingPhi::Form::log_over_loglog: return "log_over_loglog";
    case SlowVaryingPhi::Form::custom: return "custom";
  }
  return "unknown";
}

SlowVaryingPhi SlowVaryingPhi::log_power(double c, double beta) {
  if (!(std::isfinite(c) && c > 0.0)) throw DomainError("log_power: c must be positive");
  if (!(std::isfinite(beta) && beta >= 0.0)) throw DomainError("log_power: beta must be >= 0");
  SlowVaryingPhi p;
  p.form_ = Form::log_power;
  p.c_ = c;
  p.beta_ = beta;
  return p;
}

SlowVaryingPhi SlowVaryingPhi::log_over_loglog(double c) {
  if (!(std::isfinite(c) && c > 0.0)) throw DomainError("log_over_loglog: c must be positive");
  SlowVaryingPhi p;
  p.form_ = Form::log_over_loglog;
  p.c_ = c;
  p.beta_ = 0.0;
  p.lambda_max_ = std::exp(-std::numbers::e);
  return p;
}

SlowVaryingPhi SlowVaryingPhi::custom(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw ValidationError("custom phi: need at least two samples");
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [lambda, value] = samples[i];
    if (!(std::isfinite(lambda) && lambda > 0.0 && lambda <= 1.0))
      throw ValidationError("custom phi: lambda must lie in (0, 1]");
    if (!(std::isfinite(value) && value > 0.0)) throw ValidationError("custom phi: values must be positive");
    if (i > 0 && lambda == samples[i - 1].first) throw ValidationError("custom phi: duplicate lambda");
    if (i > 0 && value < samples[i - 1].second)
      throw ValidationError("custom phi: must be non-increasing in lambda");
  }
  SlowVaryingPhi p;
  p.form_ = Form::custom;
  p.c_ = 1.0;
  p.beta_ = 0.0;
  p.lambda_max_ = samples.front().first;
  p.lambda_min_ = samples.back().first;
  p.samples_ = std::move(samples);
  return p;
}

double SlowVaryingPhi::operator()(double lambda) const {
  const bool inside = form_ == Form::custom ? lambda >= lambda_min_ && lambda <= lambda_max_
                                            : lambda > lambda_min_ && lambda <= lambda_max_;
  if (!inside)
    throw DomainError("phi: lambda = " + std::to_string(lambda) + " outside the validity range");
  const double w = std::log(1.0 / lambda);
  switch (form_) {
    case Form::log_power:
      return beta_ == 0.0 ? c_ : c_ * std::pow(w, beta_);
    case Form::log_over_loglog:
      return c_ * w / std::log(w);
    case Form::custom: {
      auto it = std::partition_point(samples_.begin(), samples_.end(),
                                     [lambda](const auto& s) { return s.first > lambda; });
      if (it == samples_.begin()) return it->second;
      if (it == samples_.end()) return samples_.back().second;
      const auto& hi = *(it - 1);
      const auto& lo = *it;
      const double w0 = std::log(1.0 / hi.first), w1 = std::log(1.0 / lo.first);
      const double t = (w - w0) / (w1 - w0);
      return hi.second + t * (lo.second - hi.second);
    }
  }
  return 0.0;
}

double psi_quadrature(const SlowVaryingPhi& phi, double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("psi: x must lie in (0, 1)");
  if (!(x >= phi.lambda_min())) throw OutOfRegimeError("psi: x below the validity floor of phi");
  const double top = std::min(1.0, phi.lambda_max());
  if (x >= top) return 0.0;
  const double w0 = std::log(1.0 / top), w1 = std::log(1.0 / x);
  quad::Options opt;
  opt.abs_tol = 1e-10;
  opt.rel_tol = 1e-13;
  std::vector<double> points{w0, w1};
  if (phi.form() == SlowVaryingPhi::Form::custom) {
    points.clear();
    points.push_back(w0);
    for (const auto& s : phi.samples()) {
      const double w = std::log(1.0 / s.first);
      if (w > w0 && w < w1) points.push_back(w);
    }
    points.push_back(w1);
  }
  auto f = [&](double w) { return phi(std::min(top, std::exp(-w))); };
  return quad::integrate(f, points, opt).value;
}

double psi(const SlowVaryingPhi& phi, double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("psi: x must lie in (0, 1)");
  const double W = std::log(1.0 / x);
  switch (phi.form()) {
    case SlowVaryingPhi::Form::log_power:
      return phi.c() * std::pow(W, phi.beta() + 1.0) / (phi.beta() + 1.0);
    case SlowVaryingPhi::Form::log_over_loglog:
      // int_e^W w / ln w dw = Ei(2 ln W) - Ei(2).
      if (W <= std::numbers::e) return 0.0;
      return phi.c() * (std::expint(2.0 * std::log(W)) - std::expint(2.0));
    case SlowVaryingPhi::Form::custom:
      break;
  }
  return psi_quadrature(phi, x);
}

double solve_u_slowvary(const SlowVaryingPhi& phi, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("solve_u_slowvary: r must be positive");
  const double u_min = 1.0 / std::min(1.0, phi.lambda_max());
  const double u_max = phi.lambda_min() > 0.0 ? 1.0 / phi.lambda_min() : 1e300;
  auto g = [&](double u) { return phi(1.0 / u) / (2.0 * u); };

  // Last doubling step with g >= r; g eventually decreases to 0.
  double lo = -1.0, hi = -1.0;
  for (double u = u_min; u < u_max; u *= 2.0) {
    const double next = std::min(2.0 * u, u_max);
    if (g(u) >= r && g(next) < r) {
      lo = u;
      hi = next;
    }
    if (next == u_max) break;
  }
  if (lo < 0.0)
    throw OutOfRegimeError("solve_u_slowvary: no root of phi(1/u)/(2u) = r inside the validity range of phi");
  for (int i = 0; i < 200 && hi / lo - 1.0 > 1e-15; ++i) {
    const double mid = std::sqrt(lo * hi);
    (g(mid) >= r ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

double log_asymp_slowvary(const SlowVaryingPhi& phi, double r) {
  return -0.5 * psi(phi, 1.0 / solve_u_slowvary(phi, r));
}

double elliptic_K(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw DomainError("elliptic_K: modulus must lie in [0, 1)");
  return kPi / (2.0 * agm(1.0, std::sqrt((1.0 - k) * (1.0 + k))));
}

double frak_C(double C) {
  if (!(std::isfinite(C) && C > 0.0)) throw DomainError("frak_C: C must be positive");
  const double x = kPi / (2.0 * C);
  // sech and tanh are each other's complementary modulus.
  return agm(1.0, 1.0 / std::cosh(x)) / agm(1.0, std::tanh(x));
}

SlowVaryingPhi rc_alpha_counting(const RcAlphaParams& p) {
  check_params(p);
  if (p.alpha < 1.0) return SlowVaryingPhi::log_power(1.0 / (kPi * std::pow(p.C, 1.0 / p.alpha)), 1.0 / p.alpha);
  if (p.alpha == 1.0) return SlowVaryingPhi::log_power(1.0 / (kPi * frak_C(p.C)), 1.0);
  return SlowVaryingPhi::log_over_loglog(1.0 / (2.0 - 2.0 / p.alpha));
}

std::string rc_alpha_case(const RcAlphaParams& p) {
  check_params(p);
  return p.alpha < 1.0 ? "alpha<1" : p.alpha == 1.0 ? "alpha=1" : "alpha>1";
}

double rc_alpha_log_asymp(const RcAlphaParams& p, double eps) {
  check_params(p);
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("rc_alpha_log_asymp: eps must lie in (0, 1)");
  const double l = std::log(1.0 / eps);
  if (p.alpha < 1.0)
    return -std::pow(2.0 / p.C, 1.0 / p.alpha) * p.alpha * std::pow(l, (p.alpha + 1.0) / p.alpha) /
           ((p.alpha + 1.0) * kPi);
  if (p.alpha == 1.0) return -l * l / (kPi * frak_C(p.C));
  const double ll = std::log(l);
  if (!(ll > 0.0)) throw DomainError("rc_alpha_log_asymp: lnln(1/eps) must be positive (eps < 1/e)");
  return -l * l / ((2.0 - 2.0 / p.alpha) * ll);
}

}  // namespace smallball
