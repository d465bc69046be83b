// OpenMP kernels against their serial references. Both produce bitwise
// identical results; only the wall clock should differ.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "smallball/kernels.hpp"

namespace kernels = smallball::kernels;

namespace {

std::vector<double> brownian_lambdas(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = (static_cast<double>(i) + 0.5) * M_PI;
    v[i] = 1.0 / (k * k);
  }
  return v;
}

template <bool Parallel>
void BM_BlockedSum(benchmark::State& state) {
  const auto lambdas = brownian_lambdas(static_cast<std::size_t>(state.range(0)));
  const double u = 1e4;
  auto term = [&](std::size_t i) { return std::log1p(2.0 * u * lambdas[i]); };
  for (auto _ : state) {
    double s;
    if constexpr (Parallel)
      s = kernels::blocked_sum<double>(lambdas.size(), term);
    else
      s = kernels::serial::blocked_sum<double>(lambdas.size(), term);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_CountAtMost(benchmark::State& state) {
  const auto lambdas = brownian_lambdas(20);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    const auto hits = Parallel ? kernels::count_at_most(lambdas, n, 42, 0.1)
                               : kernels::serial::count_at_most(lambdas, n, 42, 0.1);
    benchmark::DoNotOptimize(hits);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Assemble(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    w[i] = std::sqrt(1.0 / static_cast<double>(n));
  }
  const kernels::KernelFunction g = [](double s, double t) { return std::exp(-(s - t) * (s - t)); };
  for (auto _ : state) {
    auto m = Parallel ? kernels::assemble_symmetric(x, w, g) : kernels::serial::assemble_symmetric(x, w, g);
    benchmark::DoNotOptimize(m.data());
  }
}

}  // namespace

BENCHMARK(BM_BlockedSum<false>)->Name("blocked_sum/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_BlockedSum<true>)->Name("blocked_sum/openmp")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_CountAtMost<false>)->Name("count_at_most/serial")->Arg(1 << 18);
BENCHMARK(BM_CountAtMost<true>)->Name("count_at_most/openmp")->Arg(1 << 18);
BENCHMARK(BM_Assemble<false>)->Name("assemble_symmetric/serial")->Arg(200)->Arg(800);
BENCHMARK(BM_Assemble<true>)->Name("assemble_symmetric/openmp")->Arg(200)->Arg(800);

BENCHMARK_MAIN();
