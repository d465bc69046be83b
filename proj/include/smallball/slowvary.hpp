#pragma once

// Log-level small-ball asymptotics when the counting function is slowly
// varying at zero:
//   ln P{Q <= r} ~ -psi(1/u) / 2,   psi(x) = int_x^1 phi(z) dz / z,
// with u = u(r) solving phi(1/u) / (2u) = r.  Also the counting asymptotics
// of kernels with spectral density exp(-C |xi|^alpha) and their closed forms.

#include <string>
#include <utility>
#include <vector>

namespace smallball {

/// A slowly varying counting-function model phi(lambda), valid on
/// (lambda_min, lambda_max).
class SlowVaryingPhi {
 public:
  enum class Form { log_power, log_over_loglog, custom };

  /// c * ln^beta(1/lambda), beta >= 0 (beta = 0 is the constant c).
  static SlowVaryingPhi log_power(double c, double beta);
  /// c * ln(1/lambda) / lnln(1/lambda) on (0, e^-e), where lnln > 1.
  static SlowVaryingPhi log_over_loglog(double c);
  /// Tabulated (lambda, phi) pairs, interpolated linearly in ln(1/lambda).
  static SlowVaryingPhi custom(std::vector<std::pair<double, double>> samples);

  [[nodiscard]] double operator()(double lambda) const;
  [[nodiscard]] Form form() const { return form_; }
  [[nodiscard]] double c() const { return c_; }
  [[nodiscard]] double beta() const { return beta_; }
  [[nodiscard]] double lambda_min() const { return lambda_min_; }
  [[nodiscard]] double lambda_max() const { return lambda_max_; }
  /// Sorted by decreasing lambda.
  [[nodiscard]] const std::vector<std::pair<double, double>>& samples() const { return samples_; }

  bool operator==(const SlowVaryingPhi&) const = default;

 private:
  Form form_ = Form::log_power;
  double c_ = 1.0;
  double beta_ = 1.0;
  double lambda_min_ = 0.0;
  double lambda_max_ = 1.0;
  std::vector<std::pair<double, double>> samples_;
};

std::string to_string(SlowVaryingPhi::Form form);

/// int_x^{min(1, lambda_max)} phi(z) dz / z for x in (0, 1); zero when x is
/// above the validity range.
double psi(const SlowVaryingPhi& phi, double x);
/// The same integral by quadrature in w = ln(1/z), bypassing closed forms.
double psi_quadrature(const SlowVaryingPhi& phi, double x);

/// Root u of phi(1/u) / (2u) = r on the branch where the left side decreases.
double solve_u_slowvary(const SlowVaryingPhi& phi, double r);
/// -psi(1/u(r)) / 2.
double log_asymp_slowvary(const SlowVaryingPhi& phi, double r);

struct RcAlphaParams {
  double C = 1.0;
  double alpha = 1.0;
};

/// Complete elliptic integral of the first kind, modulus k in [0, 1).
double elliptic_K(double k);
/// K(sech(pi / 2C)) / K(tanh(pi / 2C)).
double frak_C(double C);

/// Counting asymptotics for spectral density exp(-C |xi|^alpha):
///   alpha < 1: ln^{1/alpha}(1/lambda) / (pi C^{1/alpha})
///   alpha = 1: ln(1/lambda) / (pi frak_C(C))
///   alpha > 1: ln(1/lambda) / ((2 - 2/alpha) lnln(1/lambda))
SlowVaryingPhi rc_alpha_counting(const RcAlphaParams& params);

/// "alpha<1", "alpha=1" or "alpha>1".
std::string rc_alpha_case(const RcAlphaParams& params);

/// Closed-form ln P{||X|| <= eps} for the same family.
double rc_alpha_log_asymp(const RcAlphaParams& params, double eps);

}  // namespace smallball
