#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "smallball/catalog.hpp"
#include "smallball/errors.hpp"
#include "smallball/exactdist.hpp"

using namespace smallball;

namespace {

/// P{int_0^1 W^2 <= x} = sqrt(2) sum_k (-1)^k binom(2k,k)/4^k erfc((4k+1)/(2 sqrt(2x))).
double brownian_cdf_series(double x) {
  double s = 0.0, g = 1.0;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) g *= (k - 0.5) / k;
    s += (k % 2 ? -1.0 : 1.0) * g * std::erfc((4.0 * k + 1.0) / (2.0 * std::sqrt(2.0 * x)));
  }
  return std::sqrt(2.0) * s;
}

}  // namespace

TEST_SUITE("exactdist") {
  TEST_CASE("closed-form oracles") {
    const auto one = Spectrum::explicit_values({1.0});
    const auto two = Spectrum::explicit_values({0.5, 0.5});
    for (double r : {0.1, 0.5, 1.0, 2.0}) {
      const auto a = cdf_inversion(one, r);
      CHECK(std::abs(a.probability - std::erf(std::sqrt(r / 2.0))) <= 1e-10);
      CHECK(a.err >= 0.0);
      const auto b = cdf_inversion(two, r);
      CHECK(std::abs(b.probability - (1.0 - std::exp(-r))) <= 1e-10);
    }
    CHECK(cdf_inversion(one, 1.0).probability == doctest::Approx(0.6826894921).epsilon(1e-10));
    CHECK(cdf_inversion(two, std::log(2.0)).probability == doctest::Approx(0.5).epsilon(1e-10));
  }

  TEST_CASE("scale invariance") {
    const auto a = cdf_inversion(Spectrum::explicit_values({2.0, 1.0}), 0.5);
    const auto b = cdf_inversion(Spectrum::explicit_values({1.0, 0.5}), 0.25);
    CHECK(std::abs(a.probability - b.probability) <= 1e-10);
    const auto s = Spectrum::explicit_values({1.0, 0.3, 0.2, 0.05});
    for (double c : {0.1, 10.0})
      CHECK(std::abs(cdf_inversion(s.scaled(c), c * 0.4).probability - cdf_inversion(s, 0.4).probability) <= 1e-10);
  }

  TEST_CASE("monotone in r") {
    const auto s = Spectrum::explicit_values({1.0, 0.7, 0.2});
    double prev = 0.0;
    for (double r = 0.05; r < 5.0; r *= 1.3) {
      const double p = cdf_inversion(s, r).probability;
      CHECK(p >= prev - 1e-12);
      CHECK(p <= 1.0);
      prev = p;
    }
  }

  TEST_CASE("brownian: inversion within its error bar of the series oracle") {
    const auto bm = catalog("brownian");
    for (double r : {0.3, 0.1, 0.04}) {
      const auto c = cdf_inversion(bm, r);
      CHECK(bm.tail_mass(c.truncation_N).value <= 1e-3 * r);
      CHECK(c.tail_mass <= 1e-3 * r);
      CHECK(std::abs(c.probability - brownian_cdf_series(r)) <= c.err);
    }
  }

  TEST_CASE("contour inversion keeps relative accuracy deep in the tail") {
    // 40-digit values of the series oracle
    const auto bm = catalog("brownian");
    CHECK(cdf_contour(bm, 0.04).probability == doctest::Approx(0.017563585843021107834).epsilon(1e-9));
    CHECK(cdf_contour(bm, 0.01).probability == doctest::Approx(8.1077308125424427543e-7).epsilon(1e-9));
    const auto deep = cdf_contour(bm, 0.0025);
    CHECK(deep.log_probability == doctest::Approx(-52.191564379672552614).epsilon(1e-11));
    CHECK(deep.probability == doctest::Approx(2.1552198980114918127e-23).epsilon(1e-9));
    CHECK(deep.err >= 0.0);
    const auto one = Spectrum::explicit_values({1.0});
    for (double r : {0.01, 1.0, 3.0})
      CHECK(cdf_contour(one, r).probability == doctest::Approx(std::erf(std::sqrt(r / 2.0))).epsilon(1e-10));
  }

  TEST_CASE("precision floor and argument checks") {
    const auto bm = catalog("brownian");
    CHECK_THROWS_AS(cdf_inversion(bm, 0.0025), PrecisionLimitError);
    CHECK_THROWS_AS(cdf_inversion(bm, -1.0), DomainError);
    CHECK_THROWS_AS(cdf_inversion(bm, 0.1, 1e-13), DomainError);
    CHECK_THROWS_AS(cdf_monte_carlo(bm, 0.1, 0, 1), UsageError);
    CHECK_THROWS_AS(cdf_monte_carlo(bm, 0.1, 999, 1), UsageError);
    CHECK_THROWS_AS(sample_norm_squared(bm, 10, 1), TruncationError);
    // a power tail too flat for the truncation rule within the term budget
    const auto flat = Spectrum::from_tail(PowerTail{1.0, 1.05});
    CHECK_THROWS_AS(truncation_for(flat, 1e-3), TruncationError);
  }

  TEST_CASE("monte carlo against oracles") {
    const auto one = Spectrum::explicit_values({1.0});
    const auto a = cdf_monte_carlo(one, 1.0, 1000000, 11);
    CHECK(std::abs(a.probability - 0.6826894921) <= 3.0 * a.err);
    CHECK(a.err == doctest::Approx(std::sqrt(a.probability * (1 - a.probability) / 1e6)));
    const auto b = cdf_monte_carlo(Spectrum::explicit_values({0.5, 0.5}), std::log(2.0), 1000000, 12);
    CHECK(std::abs(b.probability - 0.5) <= 3.0 * b.err);
    CHECK(cdf_monte_carlo(one, 1e-12, 1000, 3).probability == 0.0);
  }

  TEST_CASE("monte carlo is deterministic in the seed") {
    const auto s = Spectrum::explicit_values({1.0, 0.4, 0.1});
    const auto a = cdf_monte_carlo(s, 0.8, 300000, 99);
    const auto b = cdf_monte_carlo(s, 0.8, 300000, 99);
    CHECK(a.probability == b.probability);
    CHECK(cdf_monte_carlo(s, 0.8, 300000, 100).probability != a.probability);
  }

  TEST_CASE("randomized spectra: inversion vs monte carlo") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    int agree = 0;
    for (int t = 0; t < 8; ++t) {
      std::vector<double> v(5);
      for (double& x : v) x = u(rng);
      std::sort(v.begin(), v.end(), std::greater<>());
      const auto s = Spectrum::explicit_values(v);
      double sum = 0.0;
      for (double x : v) sum += x;
      const double r = 0.6 * sum;
      const auto a = cdf_inversion(s, r);
      const auto b = cdf_monte_carlo(s, r, 200000, 1000 + t);
      if (std::abs(a.probability - b.probability) <= 3.0 * std::hypot(a.err, b.err)) ++agree;
    }
    CHECK(agree >= 7);
  }

  TEST_CASE("sample moments") {
    const auto x = sample_norm_squared(Spectrum::explicit_values({1.0}), 1000000, 5);
    double m = 0.0, v = 0.0;
    for (double q : x) m += q;
    m /= x.size();
    for (double q : x) v += (q - m) * (q - m);
    v /= x.size() - 1;
    CHECK(std::abs(m - 1.0) <= 5.0 * std::sqrt(2.0 / 1e6));
    CHECK(std::abs(v - 2.0) <= 5.0 * std::sqrt(56.0 / 1e6));  // Var of the sample variance: (mu_4 - sigma^4) / n = 56 / n
    const auto e = sample_norm_squared(Spectrum::explicit_values({0.5, 0.5}), 1000000, 6);
    double me = 0.0;
    for (double q : e) me += q;
    CHECK(std::abs(me / e.size() - 1.0) <= 5e-3);
    const auto b = sample_norm_squared(catalog("brownian"), 100000, 7, 100);
    double mb = 0.0;
    for (double q : b) mb += q;
    const double expected = catalog("brownian").total().value - catalog("brownian").tail_mass(100).value;
    CHECK(std::abs(mb / b.size() - expected) <= 5.0 * std::sqrt(2.0 * 0.1 / 1e5));
    CHECK(std::abs(expected - 0.5) < 0.01);
  }
}
