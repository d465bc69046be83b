#pragma once

// Data-parallel inner loops. Each OpenMP kernel has a serial reference in
// smallball::kernels::serial that performs the identical arithmetic in the
// identical order, so results are bitwise reproducible for any thread count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace smallball::kernels {

/// Fixed block length of the deterministic reduction.
inline constexpr std::size_t kSumBlock = 1024;
/// Samples per Monte Carlo chunk; each chunk owns an independent substream.
inline constexpr std::uint64_t kSampleChunk = 1u << 16;

/// Seed of chunk `index` derived from the master seed (splitmix64 finaliser).
std::uint64_t chunk_seed(std::uint64_t master, std::uint64_t index);

/// sum_{i < n} term(i): block partials in parallel, combined in block order.
template <class V, class Term>
V blocked_sum(std::size_t n, Term&& term) {
  const std::size_t blocks = (n + kSumBlock - 1) / kSumBlock;
  if (blocks <= 1) {
    V acc{};
    for (std::size_t i = 0; i < n; ++i) acc += term(i);
    return acc;
  }
  std::vector<V> partial(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kSumBlock;
    const std::size_t hi = std::min(n, lo + kSumBlock);
    V acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  V total{};
  for (const V& p : partial) total += p;
  return total;
}

using KernelFunction = std::function<double(double, double)>;

/// B_ij = scale_i * kernel(x_i, x_j) * scale_j for a symmetric kernel.
Eigen::MatrixXd assemble_symmetric(std::span<const double> nodes, std::span<const double> scale,
                                   const KernelFunction& kernel);

/// Raw draws of sum_j lambda_j xi_j^2.
std::vector<double> sample_quadratic_form(std::span<const double> lambdas, std::uint64_t n_samples,
                                          std::uint64_t seed);

/// Number of draws of sum_j lambda_j xi_j^2 that are <= r; same stream as
/// sample_quadratic_form.
std::uint64_t count_at_most(std::span<const double> lambdas, std::uint64_t n_samples,
                            std::uint64_t seed, double r);

namespace serial {

template <class V, class Term>
V blocked_sum(std::size_t n, Term&& term) {
  const std::size_t blocks = (n + kSumBlock - 1) / kSumBlock;
  if (blocks <= 1) {
    V acc{};
    for (std::size_t i = 0; i < n; ++i) acc += term(i);
    return acc;
  }
  V total{};
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * kSumBlock;
    const std::size_t hi = std::min(n, lo + kSumBlock);
    V acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    total += acc;
  }
  return total;
}

Eigen::MatrixXd assemble_symmetric(std::span<const double> nodes, std::span<const double> scale,
                                   const KernelFunction& kernel);
std::vector<double> sample_quadratic_form(std::span<const double> lambdas, std::uint64_t n_samples,
                                          std::uint64_t seed);
std::uint64_t count_at_most(std::span<const double> lambdas, std::uint64_t n_samples,
                            std::uint64_t seed, double r);

}  // namespace serial

}  // namespace smallball::kernels
