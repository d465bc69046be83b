#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "smallball/catalog.hpp"
#include "smallball/errors.hpp"
#include "smallball/saddle.hpp"
#include "smallball/slowvary.hpp"

using namespace smallball;
using std::numbers::pi;

namespace {

const double kSymmetryC = pi / (2.0 * std::log1p(std::sqrt(2.0)));

double K_quadrature(double k) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); }, 0.0,
                      pi / 2.0);
}

}  // namespace

TEST_SUITE("slowvary") {
  TEST_CASE("psi examples") {
    const auto lin = SlowVaryingPhi::log_power(1.0, 1.0);
    const auto sq = SlowVaryingPhi::log_power(1.0, 2.0);
    CHECK(psi(lin, std::exp(-2.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(psi(sq, std::exp(-3.0)) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(psi_quadrature(lin, std::exp(-2.0)) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(psi_quadrature(sq, std::exp(-3.0)) == doctest::Approx(9.0).epsilon(1e-10));
    CHECK(psi(lin, 1.0 - 1e-16) == doctest::Approx(0.0));
    CHECK(psi(SlowVaryingPhi::log_power(1.0, 0.0), 0.1) == doctest::Approx(std::log(10.0)).epsilon(1e-14));
    CHECK_THROWS_AS(psi(lin, 0.0), DomainError);
    CHECK_THROWS_AS(psi(lin, 1.5), DomainError);
  }

  TEST_CASE("psi: closed forms agree with quadrature") {
    for (double x : {1e-2, 1e-6, 1e-15}) {
      for (const auto& phi : {SlowVaryingPhi::log_power(0.3, 1.5), SlowVaryingPhi::log_over_loglog(2.0)}) {
        const double a = psi(phi, x), b = psi_quadrature(phi, x);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
      }
    }
    // 30-digit value of int_{1e-10}^{e^-e} ln(1/z)/(z lnln(1/z)) dz
    CHECK(psi(SlowVaryingPhi::log_over_loglog(1.0), 1e-10) ==
          doctest::Approx(101.67452396816977688).epsilon(1e-12));
  }

  TEST_CASE("custom phi") {
    const auto phi = SlowVaryingPhi::custom({{1e-12, 27.6}, {1e-6, 13.8}, {1e-2, 4.6}, {0.5, 0.7}});
    CHECK(phi(1e-6) == doctest::Approx(13.8));
    CHECK(psi(phi, 1e-6) > psi(phi, 1e-2));
    CHECK(psi(phi, 1e-6) == doctest::Approx(psi_quadrature(phi, 1e-6)));
    CHECK_THROWS_AS(SlowVaryingPhi::custom({{1e-6, 1.0}, {1e-2, 4.6}}), ValidationError);
  }

  TEST_CASE("solve_u examples") {
    CHECK(solve_u_slowvary(SlowVaryingPhi::log_power(1.0, 0.0), 0.05) == doctest::Approx(10.0).epsilon(1e-10));
    const auto lin = SlowVaryingPhi::log_power(1.0, 1.0);
    CHECK(std::abs(solve_u_slowvary(lin, std::log(100.0) / 200.0) - 100.0) <= 1e-8 * 100.0);
    const auto sq = SlowVaryingPhi::log_power(1.0, 2.0);
    const double u = solve_u_slowvary(sq, 1e-6);
    CHECK(std::abs(sq(1.0 / u) / (2.0 * u) - 1e-6) <= 1e-10 * 1e-6);
    CHECK_THROWS_AS(solve_u_slowvary(lin, 10.0), OutOfRegimeError);
  }

  TEST_CASE("log asymptotics") {
    CHECK(log_asymp_slowvary(SlowVaryingPhi::log_power(1.0, 0.0), 0.05) ==
          doctest::Approx(-std::log(10.0) / 2.0).epsilon(1e-10));
    const auto phi = SlowVaryingPhi::log_power(0.5, 1.0);
    double prev = 0.0;
    for (double r = 1e-2; r > 1e-30; r *= 1e-2) {
      const double v = log_asymp_slowvary(phi, r);
      CHECK(v < prev);
      prev = v;
    }
  }

  TEST_CASE("slow variation witness and phi/psi decay") {
    for (const auto& phi : {SlowVaryingPhi::log_power(1.0, 1.0), SlowVaryingPhi::log_power(0.25, 0.5),
                            SlowVaryingPhi::log_over_loglog(1.0)}) {
      double prev_dev = INFINITY, prev_q = INFINITY;
      for (int k = 4; k <= 12; ++k) {
        const double l = std::pow(10.0, -k);
        const double dev = std::max(std::abs(phi(0.5 * l) / phi(l) - 1.0), std::abs(phi(2.0 * l) / phi(l) - 1.0));
        CHECK(dev < prev_dev);
        prev_dev = dev;
        const double q = phi(l) / psi(phi, l);
        CHECK(q < prev_q);
        prev_q = q;
      }
      CHECK(prev_dev <= 0.05);
    }
  }

  TEST_CASE("elliptic constants") {
    CHECK(std::abs(elliptic_K(0.0) - pi / 2.0) <= 1e-14 * pi / 2.0);
    CHECK(std::abs(elliptic_K(1.0 / std::sqrt(2.0)) - 1.8540746773013719184) <= 1e-10);
    for (double k : {0.1, 1.0 / std::sqrt(2.0), 0.9, 0.999})
      CHECK(elliptic_K(k) == doctest::Approx(K_quadrature(k)).epsilon(1e-13));
    CHECK(std::abs(frak_C(kSymmetryC) - 1.0) <= 1e-10);
    CHECK(frak_C(1.0) == doctest::Approx(0.69390354611458208277).epsilon(1e-12));
    CHECK(frak_C(3.0) == doctest::Approx(1.3084281656579881054).epsilon(1e-12));
    CHECK_THROWS_AS(elliptic_K(1.0), DomainError);
    CHECK_THROWS_AS(frak_C(0.0), DomainError);
  }

  TEST_CASE("rc_alpha counting") {
    const auto a = rc_alpha_counting({2.0, 0.5});
    CHECK(a.form() == SlowVaryingPhi::Form::log_power);
    CHECK(a.c() == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-14));
    CHECK(a.beta() == doctest::Approx(2.0).epsilon(1e-14));
    const auto b = rc_alpha_counting({7.0, 2.0});
    CHECK(b.form() == SlowVaryingPhi::Form::log_over_loglog);
    CHECK(b.c() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b == rc_alpha_counting({0.1, 2.0}));
    const auto c = rc_alpha_counting({kSymmetryC, 1.0});
    CHECK(c.form() == SlowVaryingPhi::Form::log_power);
    CHECK(c.c() == doctest::Approx(1.0 / pi).epsilon(1e-10));
    CHECK(c.beta() == 1.0);
    CHECK(rc_alpha_case({1.0, 0.999}) == "alpha<1");
    CHECK(rc_alpha_case({1.0, 1.0}) == "alpha=1");
    CHECK(rc_alpha_case({1.0, 1.001}) == "alpha>1");
    CHECK_THROWS_AS(rc_alpha_counting({0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(rc_alpha_counting({1.0, -1.0}), DomainError);
  }

  TEST_CASE("rc_alpha closed forms") {
    CHECK(rc_alpha_log_asymp({2.0, 0.5}, 1e-5) ==
          doctest::Approx(-std::pow(std::log(1e5), 3) / (3.0 * pi)).epsilon(1e-12));
    CHECK(rc_alpha_log_asymp({2.0, 0.5}, 1e-5) == doctest::Approx(-161.9).epsilon(1e-3));
    CHECK(rc_alpha_log_asymp({kSymmetryC, 1.0}, std::exp(-10.0)) == doctest::Approx(-100.0 / pi).epsilon(1e-10));
    CHECK(rc_alpha_log_asymp({3.0, 2.0}, std::exp(-std::exp(2.0))) ==
          doctest::Approx(-std::exp(4.0) / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(rc_alpha_log_asymp({1.0, 1.0}, 1.0), DomainError);
    CHECK_THROWS_AS(rc_alpha_log_asymp({1.0, 1.0}, 0.0), DomainError);
  }

  TEST_CASE("agrees with the saddle estimate on the matching spectrum") {
    // lambda_n = exp(-2 sqrt(pi n)) counts as ln^2(1/lambda) / (4 pi)
    const auto s = catalog("stretched_exp", {{"C", 2.0}, {"alpha", 0.5}});
    const auto phi = rc_alpha_counting({2.0, 0.5});
    double prev = INFINITY;
    for (double r : {1e-10, 1e-20, 1e-40}) {
      const double gap = std::abs(log_asymp_slowvary(phi, r) / log_small_ball_estimate(s, r) - 1.0);
      CHECK(gap < prev);
      prev = gap;
      if (r == 1e-10) CHECK(gap <= 0.15);
    }
  }
}
