#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qnl/kernel.hpp"
#include "qnl/quadrature.hpp"

using namespace qnl;

TEST_SUITE("quadrature") {
  TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
    for (int order : {1, 2, 5, 8, 16, 64}) {
      const auto rule = quadrature::gauss_legendre(order);
      REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
      double wsum = 0.0;
      for (double w : rule.weights) wsum += w;
      CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
      const int deg = 2 * order - 1;
      double s = 0.0;
      for (int k = 0; k < order; ++k) s += rule.weights[k] * std::pow(rule.nodes[k], deg - (deg % 2));
      CHECK(s == doctest::Approx(2.0 / (deg - (deg % 2) + 1)).epsilon(1e-13));
    }
    CHECK_THROWS(quadrature::gauss_legendre(0));
    CHECK_THROWS(quadrature::gauss_legendre(65));
  }

  TEST_CASE("adaptive integration agrees with simpson on smooth and kinked integrands") {
    auto smooth = [](double x) { return std::exp(-x) * std::sin(3 * x); };
    CHECK(quadrature::integrate(smooth, 0.0, 2.0) ==
          doctest::Approx(oracle::simpson(smooth, 0.0, 2.0, 20000)).epsilon(1e-11));
    auto kink = [](double x) { return std::abs(x - 0.3); };
    CHECK(quadrature::integrate(kink, 0.0, 1.0) == doctest::Approx(0.29).epsilon(1e-10));
  }
}

TEST_SUITE("kernel") {
  TEST_CASE("constant kernel value and normalization") {
    const Kernel k = constant_kernel(0.06);
    CHECK(k(0.01) == doctest::Approx(3.0 / (0.06 * 0.06 * 0.06)));
    CHECK(k(0.07) == 0.0);
    CHECK(k.moment(0.0, 0.06, 2) == doctest::Approx(1.0).epsilon(1e-14));
    const Kernel unit = constant_kernel(1.0);
    CHECK(unit(0.5) == 3.0);
    CHECK(unit.moment(0.0, 1.0, 2) == doctest::Approx(1.0));
    CHECK_THROWS_AS(constant_kernel(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(constant_kernel(0.0), std::invalid_argument);
  }

  TEST_CASE("partial moments of the constant kernel match the simpson oracle") {
    const int r = 3;
    const double dx = 0.01;
    const Kernel k = constant_kernel(r * dx);
    const double expected2[] = {1.0 / 27, 7.0 / 27, 19.0 / 27};
    double sum = 0.0;
    for (int j = 1; j <= r; ++j) {
      const double a = (j - 1) * dx;
      const double b = j * dx;
      const double s2 = oracle::simpson([&](double s) { return s * s * k(s); }, a, b);
      const double s1 = oracle::simpson([&](double s) { return s * k(s); }, a, b);
      CHECK(partial_moment(k, j, dx, 2) == doctest::Approx(s2).epsilon(1e-12));
      CHECK(partial_moment(k, j, dx, 2) == doctest::Approx(expected2[j - 1]).epsilon(1e-13));
      CHECK(partial_moment(k, j, dx, 1) == doctest::Approx(s1).epsilon(1e-12));
      sum += partial_moment(k, j, dx, 2);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(partial_moment(k, 2, dx, 1) == doctest::Approx(1.0 / (6.0 * dx)).epsilon(1e-13));
    CHECK_THROWS_AS(partial_moment(k, 4, dx, 2), std::out_of_range);
  }

  TEST_CASE("tail and prefix moments") {
    const double delta = 0.2;
    const Kernel k = constant_kernel(delta);
    CHECK(tail_moment(k, delta, 1) == 0.0);
    CHECK(tail_moment(k, delta, 2) == 0.0);
    CHECK(tail_moment(k, 0.0, 2) == doctest::Approx(1.0).epsilon(1e-14));
    const double oracle_half = oracle::simpson([&](double s) { return s * k(s); }, delta / 2, delta);
    CHECK(tail_moment(k, delta / 2, 1) == doctest::Approx(9.0 / (8.0 * delta)).epsilon(1e-13));
    CHECK(tail_moment(k, delta / 2, 1) == doctest::Approx(oracle_half).epsilon(1e-12));
    double prev = tail_moment(k, 0.0, 1);
    for (int m = 1; m <= 20; ++m) {
      const double a = m * delta / 20;
      CHECK(tail_moment(k, a, 1) <= prev);
      prev = tail_moment(k, a, 1);
      CHECK(tail_moment(k, a, 2) + prefix_moment(k, a, 2) ==
            doctest::Approx(tail_moment(k, 0.0, 2)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(tail_moment(k, -0.01, 1), std::out_of_range);
    CHECK_THROWS_AS(tail_moment(k, delta * 1.5, 1), std::out_of_range);
  }

  TEST_CASE("piecewise profiles use quadrature and agree with simpson") {
    // gamma(rho) = c (1 - rho) normalized so the half-line second moment is 1: c = 12.
    const KernelProfile p = KernelProfile::parse_pieces("[0,0.5:12,-12;0.5,1:12,-12]");
    const double delta = 0.05;
    const Kernel k(delta, p);
    CHECK(k.moment(0.0, delta, 2) == doctest::Approx(1.0).epsilon(1e-10));
    const double dx = delta / 4;
    double sum = 0.0;
    for (int j = 1; j <= 4; ++j) {
      const double o = oracle::simpson([&](double s) { return s * s * k(s); }, (j - 1) * dx, j * dx);
      CHECK(partial_moment(k, j, dx, 2) == doctest::Approx(o).epsilon(1e-10));
      CHECK(partial_moment(k, j, dx, 2) >= (j - 1) * dx * partial_moment(k, j, dx, 1));
      sum += partial_moment(k, j, dx, 2);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(validate(k).ok());
  }

  TEST_CASE("validation reports violations with residuals") {
    const KernelValidation ok = validate(constant_kernel(0.1));
    CHECK(ok.ok());
    CHECK(ok.normalized.residual == doctest::Approx(0.0).epsilon(1e-15));

    const Kernel increasing(0.1, KernelProfile::parse_pieces("0,1:0,1"));
    const KernelValidation inc = validate(increasing);
    CHECK_FALSE(inc.nonincreasing.passed);
    CHECK(inc.nonnegative.passed);

    const KernelValidation doubled = validate(Kernel(0.1, KernelProfile::constant(6.0)));
    CHECK_FALSE(doubled.normalized.passed);
    CHECK(doubled.normalized.residual == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("profile parsing rejects malformed input") {
    CHECK_THROWS(KernelProfile::parse_pieces(""));
    CHECK_THROWS(KernelProfile::parse_pieces("0,0.5:1"));          // does not reach 1
    CHECK_THROWS(KernelProfile::parse_pieces("0,0.5:1;0.6,1:1"));  // gap
    CHECK_THROWS(KernelProfile::parse_pieces("0,1:x"));
  }

  TEST_CASE("moment table matches direct queries") {
    const int r = 5;
    const double dx = 0.002;
    const Kernel k = constant_kernel(r * dx);
    const MomentTable mt(k, r);
    for (int j = 1; j <= r; ++j) {
      CHECK(mt.partial(j, 1) == doctest::Approx(partial_moment(k, j, dx, 1)));
      CHECK(mt.partial(j, 2) == doctest::Approx(partial_moment(k, j, dx, 2)));
    }
    for (int m = 0; m <= r; ++m) {
      CHECK(mt.tail1(m) == doctest::Approx(tail_moment(k, m * dx, 1)));
      CHECK(mt.prefix2(m) == doctest::Approx(prefix_moment(k, m * dx, 2)));
    }
  }
}
