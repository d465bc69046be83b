#include "smallball/kernels.hpp"

#include <algorithm>
#include <random>

namespace smallball::kernels {

std::uint64_t chunk_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::uint64_t chunk_count(std::uint64_t n) { return (n + kSampleChunk - 1) / kSampleChunk; }

template <class Sink>
void run_chunk(std::span<const double> lambdas, std::uint64_t n_samples, std::uint64_t seed,
               std::uint64_t chunk, Sink&& sink) {
  std::mt19937_64 gen(chunk_seed(seed, chunk));
  std::normal_distribution<double> normal;
  const std::uint64_t lo = chunk * kSampleChunk;
  const std::uint64_t hi = std::min(n_samples, lo + kSampleChunk);
  for (std::uint64_t i = lo; i < hi; ++i) {
    double q = 0.0;
    for (double lambda : lambdas) {
      const double z = normal(gen);
      q += lambda * z * z;
    }
    sink(i, q);
  }
}

void fill_row(Eigen::MatrixXd& out, std::span<const double> nodes, std::span<const double> scale,
              const KernelFunction& kernel, std::size_t i) {
  for (std::size_t j = 0; j <= i; ++j) {
    const double v = scale[i] * kernel(nodes[i], nodes[j]) * scale[j];
    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
  }
}

}  // namespace

Eigen::MatrixXd assemble_symmetric(std::span<const double> nodes, std::span<const double> scale,
                                   const KernelFunction& kernel) {
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
  Eigen::MatrixXd out(n, n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) fill_row(out, nodes, scale, kernel, static_cast<std::size_t>(i));
  return out;
}

std::vector<double> sample_quadratic_form(std::span<const double> lambdas, std::uint64_t n_samples,
                                          std::uint64_t seed) {
  std::vector<double> out(n_samples);
  const auto chunks = static_cast<std::ptrdiff_t>(chunk_count(n_samples));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t c = 0; c < chunks; ++c)
    run_chunk(lambdas, n_samples, seed, static_cast<std::uint64_t>(c),
              [&](std::uint64_t i, double q) { out[i] = q; });
  return out;
}

std::uint64_t count_at_most(std::span<const double> lambdas, std::uint64_t n_samples,
                            std::uint64_t seed, double r) {
  const auto chunks = static_cast<std::ptrdiff_t>(chunk_count(n_samples));
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    std::uint64_t hits = 0;
    run_chunk(lambdas, n_samples, seed, static_cast<std::uint64_t>(c),
              [&](std::uint64_t, double q) { hits += (q <= r) ? 1 : 0; });
    total += hits;
  }
  return total;
}

namespace serial {

Eigen::MatrixXd assemble_symmetric(std::span<const double> nodes, std::span<const double> scale,
                                   const KernelFunction& kernel) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd out(n, n);
  for (std::size_t i = 0; i < nodes.size(); ++i) fill_row(out, nodes, scale, kernel, i);
  return out;
}

std::vector<double> sample_quadratic_form(std::span<const double> lambdas, std::uint64_t n_samples,
                                          std::uint64_t seed) {
  std::vector<double> out(n_samples);
  for (std::uint64_t c = 0; c < chunk_count(n_samples); ++c)
    run_chunk(lambdas, n_samples, seed, c, [&](std::uint64_t i, double q) { out[i] = q; });
  return out;
}

std::uint64_t count_at_most(std::span<const double> lambdas, std::uint64_t n_samples,
                            std::uint64_t seed, double r) {
  std::uint64_t total = 0;
  for (std::uint64_t c = 0; c < chunk_count(n_samples); ++c)
    run_chunk(lambdas, n_samples, seed, c,
              [&](std::uint64_t, double q) { total += (q <= r) ? 1 : 0; });
  return total;
}

}  // namespace serial

}  // namespace smallball::kernels
