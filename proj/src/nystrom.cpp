#include "smallball/nystrom.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "smallball/errors.hpp"
#include "smallball/kernels.hpp"
#include "smallball/quadrature.hpp"

namespace smallball {

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::brownian: return "brownian";
    case KernelKind::constant: return "constant";
    case KernelKind::cauchy: return "cauchy";
    case KernelKind::gauss: return "gauss";
    case KernelKind::tabulated: return "tabulated";
  }
  return "unknown";
}

KernelKind kernel_kind_from_string(const std::string& name) {
  for (auto k : {KernelKind::brownian, KernelKind::constant, KernelKind::cauchy, KernelKind::gauss,
                 KernelKind::tabulated})
    if (to_string(k) == name) return k;
  throw UsageError("unknown kernel '" + name + "' (known: brownian, constant, cauchy, gauss, tabulated)");
}

double KernelSpec::operator()(double s, double t) const {
  switch (kind) {
    case KernelKind::brownian:
      return std::min(s, t);
    case KernelKind::constant:
      return 1.0;
    case KernelKind::cauchy: {
      const double d = s - t;
      return C / (std::numbers::pi * (C * C + d * d));
    }
    case KernelKind::gauss: {
      const double d = s - t;
      return std::exp(-d * d / (4.0 * C)) / (2.0 * std::sqrt(std::numbers::pi * C));
    }
    case KernelKind::tabulated: {
      const KernelTable& tab = *table;
      const double step = (b - a) / static_cast<double>(tab.n - 1);
      auto locate = [&](double x, std::size_t& i, double& frac) {
        const double pos = std::clamp((x - a) / step, 0.0, static_cast<double>(tab.n - 1));
        i = std::min(static_cast<std::size_t>(pos), tab.n - 2);
        frac = pos - static_cast<double>(i);
      };
      std::size_t i, j;
      double fs, ft;
      locate(s, i, fs);
      locate(t, j, ft);
      auto at = [&](std::size_t r, std::size_t c) { return tab.values[r * tab.n + c]; };
      return (1 - fs) * ((1 - ft) * at(i, j) + ft * at(i, j + 1)) +
             fs * ((1 - ft) * at(i + 1, j) + ft * at(i + 1, j + 1));
    }
  }
  return 0.0;
}

double KernelSpec::diagonal_jump(double) const {
  // min(s, t): slope 1 below the diagonal, 0 above.
  return kind == KernelKind::brownian ? -1.0 : 0.0;
}

void KernelSpec::validate() const {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b)) throw DomainError("kernel: interval must satisfy a < b");
  if ((kind == KernelKind::cauchy || kind == KernelKind::gauss) && !(std::isfinite(C) && C > 0.0))
    throw DomainError("kernel: C must be positive");
  if (kind == KernelKind::tabulated) {
    if (!table || table->n < 2 || table->values.size() != table->n * table->n)
      throw ValidationError("kernel: tabulated grid must be n x n with n >= 2");
    const std::size_t n = table->n;
    double scale = 0.0;
    for (double v : table->values) {
      if (!std::isfinite(v)) throw ValidationError("kernel: tabulated values must be finite");
      scale = std::max(scale, std::abs(v));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (std::abs(table->values[i * n + j] - table->values[j * n + i]) > 1e-12 * scale)
          throw ValidationError("kernel: tabulated grid is not symmetric at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
  }
}

std::vector<double> nystrom_eigenvalues(const KernelSpec& kernel, std::size_t n_nodes, const NystromOptions& opt) {
  if (n_nodes < 2) throw UsageError("nystrom: need at least 2 nodes");
  kernel.validate();
  const auto rule = quad::gauss_legendre(n_nodes, kernel.a, kernel.b);
  std::vector<double> rho(n_nodes), scale(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    rho[i] = kernel.density(rule.nodes[i]);
    if (!(std::isfinite(rho[i]) && rho[i] > 0.0)) throw ValidationError("nystrom: weight density must be positive");
    scale[i] = std::sqrt(rule.weights[i] * rho[i]);
  }
  const kernels::KernelFunction fn = std::cref(kernel);
  Eigen::MatrixXd m = kernels::assemble_symmetric(rule.nodes, scale, fn);

  // At a derivative jump J on the diagonal the rule errs by about
  // (J / 12) w_i^2 f(x_i) in row i. Spreading the correction over the two
  // neighbours keeps the matrix symmetric and its trace unchanged.
  if (opt.kink_correction) {
    for (std::size_t i = 0; i + 1 < n_nodes; ++i) {
      const double jump = kernel.diagonal_jump(0.5 * (rule.nodes[i] + rule.nodes[i + 1]));
      if (jump == 0.0) continue;
      const double c = jump / 24.0 * std::sqrt(rho[i] * rho[i + 1]) * rule.weights[i] * rule.weights[i + 1];
      const auto r = static_cast<Eigen::Index>(i);
      m(r, r + 1) += c;
      m(r + 1, r) += c;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ValidationError("nystrom: eigensolver did not converge");
  std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + n_nodes);
  std::sort(values.begin(), values.end(), std::greater<>());
  const double top = std::max(std::abs(values.front()), std::abs(values.back()));
  const double tol = 100.0 * static_cast<double>(n_nodes) * std::numeric_limits<double>::epsilon() * top;
  if (values.back() < -tol)
    throw ValidationError("nystrom: kernel is not positive semidefinite (eigenvalue " +
                          std::to_string(values.back()) + ")");
  return values;
}

Spectrum nystrom_spectrum(const KernelSpec& kernel, std::size_t n_nodes, const NystromOptions& opt) {
  const auto values = nystrom_eigenvalues(kernel, n_nodes, opt);
  const double floor = opt.drop_factor * std::numeric_limits<double>::epsilon() * values.front();
  std::vector<double> kept;
  for (double v : values)
    if (v > floor) kept.push_back(v);
  return Spectrum::explicit_values(std::move(kept));
}

}  // namespace smallball
