#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smallball/spectrum.hpp"

namespace smallball {

enum class KernelKind { brownian, constant, cauchy, gauss, tabulated };

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

/// Kernel values on a uniform (n x n) grid over [a, b]^2, row-major,
/// evaluated by bilinear interpolation.
struct KernelTable {
  std::size_t n = 0;
  std::vector<double> values;
};

/// Covariance kernel, interval and measure density of the eigenproblem
///   lambda f(x) = int_a^b G(x, y) f(y) rho(y) dy.
struct KernelSpec {
  KernelKind kind = KernelKind::brownian;
  double C = 1.0;  // cauchy / gauss parameter
  double a = 0.0;
  double b = 1.0;
  std::function<double(double)> weight;  // rho; empty means 1
  std::optional<KernelTable> table;

  [[nodiscard]] double operator()(double s, double t) const;
  [[nodiscard]] double density(double x) const { return weight ? weight(x) : 1.0; }
  /// d/dt G(x, t)|_{t=x+} - d/dt G(x, t)|_{t=x-}; zero for kernels smooth
  /// across the diagonal.
  [[nodiscard]] double diagonal_jump(double x) const;
  void validate() const;
};

struct NystromOptions {
  /// Eigenvalues below drop_factor * machine epsilon * lambda_1 are discarded.
  double drop_factor = 10.0;
  /// Trace-preserving correction of the quadrature error at a diagonal kink.
  bool kink_correction = true;
};

/// All eigenvalues of the symmetrised Gauss-Legendre discretisation, descending.
std::vector<double> nystrom_eigenvalues(const KernelSpec& kernel, std::size_t n_nodes,
                                        const NystromOptions& opt = {});

/// Eigenvalues as an explicit spectrum (tiny ones dropped, no tail).
Spectrum nystrom_spectrum(const KernelSpec& kernel, std::size_t n_nodes, const NystromOptions& opt = {});

}  // namespace smallball
