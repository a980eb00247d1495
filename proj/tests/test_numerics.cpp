#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "bslab/numerics.hpp"
#include "doctest.h"

using namespace bslab;

TEST_CASE("sinc at exact points and near the series switchover") {
  CHECK(sinc_pi(0.0) == 1.0);
  CHECK(std::abs(sinc_pi(1.0)) < 1e-16);
  CHECK(std::abs(sinc_pi(2.0)) < 1e-16);
  CHECK(sinc_pi(0.5) == doctest::Approx(2.0 / 3.14159265358979323846).epsilon(1e-15));
  // series branch and direct branch must agree across the threshold
  for (double t : {1e-5, 2e-5, 3.1e-5, 3.2e-5, 1e-4, 2e-4}) {
    double direct = std::sin(3.14159265358979323846 * t) / (3.14159265358979323846 * t);
    CHECK(sinc_pi(t) == doctest::Approx(direct).epsilon(1e-15));
    CHECK(sinc_pi(-t) == sinc_pi(t));
  }
}

TEST_CASE("integer powers") {
  CHECK(ipow(2.0, 0) == 1.0);
  CHECK(ipow(2.0, 10) == 1024.0);
  CHECK(ipow(-3.0, 3) == -27.0);
  CHECK(ipow(0.5, 4) == 0.0625);
}

TEST_CASE("compensated summation beats naive accumulation") {
  KahanSum s;
  const double tiny = 1e-16;
  s.add(1.0);
  for (int i = 0; i < 100000; ++i) s.add(tiny);
  double naive = 1.0;
  for (int i = 0; i < 100000; ++i) naive += tiny;
  double exact = 1.0 + 100000 * tiny;
  CHECK(std::abs(s.value() - exact) < 3e-16);  // one final rounding
  CHECK(std::abs(naive - exact) > 1e-12);      // naive drops the tail entirely
  CHECK(std::abs(s.value() - exact) <= std::abs(naive - exact));
}

TEST_CASE("hurwitz zeta against high-precision references") {
  // references computed independently at 40-digit precision
  struct Case {
    int s;
    double x;
    double want;
  };
  const Case cases[] = {
      {2, 1.0, 1.6449340668482264365},
      {2, 0.25, 17.197329154507110739},
      {3, 0.5, 8.4143983221171599978},
      {4, 1.75, 0.13339159531460613288},
      {5, 0.1, 100000.65030013313328},
      {7, 3.0, 0.0005367773819228268398},
      {2, 0.001, 1000001.6425331958273},
      {9, 12.345, 3.1583004226558436859e-10},
      {3, 0.03125, 32769.106368201372332},
  };
  for (const auto& c : cases) {
    ZetaResult r = hurwitz_zeta(c.s, c.x);
    CHECK(std::abs(r.value - c.want) <= r.err_bound + 1e-15 * std::abs(c.want));
    CHECK(std::abs(r.value - c.want) <= 1e-13 * std::abs(c.want));
    CHECK(r.err_bound >= 0.0);
    CHECK(r.err_bound <= 1e-12 * std::abs(c.want) + 1e-300);
  }
}

TEST_CASE("hurwitz zeta recurrence zeta(s,x) = x^-s + zeta(s,x+1)") {
  for (int s : {2, 3, 5, 8}) {
    for (double x : {0.125, 0.5, 1.0, 2.75}) {
      double lhs = hurwitz_zeta(s, x).value;
      double rhs = std::pow(x, -s) + hurwitz_zeta(s, x + 1.0).value;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
  }
}

TEST_CASE("hurwitz zeta domain checks") {
  CHECK_THROWS(hurwitz_zeta(1, 0.5));
  CHECK_THROWS(hurwitz_zeta(2, 0.0));
  CHECK_THROWS(hurwitz_zeta(2, -1.0));
}

TEST_CASE("binomial confidence halfwidth") {
  CHECK(binomial_ci_halfwidth(0.5, 0) == 1.0);
  double hw = binomial_ci_halfwidth(0.5, 10000);
  CHECK(hw == doctest::Approx(1.959963984540054 * std::sqrt(0.25 / 10000)).epsilon(1e-15));
  CHECK(binomial_ci_halfwidth(0.0, 100) == 0.0);
  CHECK(binomial_ci_halfwidth(1.0, 100) == 0.0);
  CHECK(binomial_ci_halfwidth(0.3, 100) > binomial_ci_halfwidth(0.3, 1000));
}
