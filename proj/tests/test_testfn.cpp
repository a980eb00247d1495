#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "bslab/errors.hpp"
#include "bslab/rng.hpp"
#include "bslab/testfn.hpp"
#include "doctest.h"

using namespace bslab;

TEST_CASE("exact B-spline values against independently computed references") {
  CHECK(bspline_exact(2, rat_of(1, 3)) == rat_of(2, 3));
  CHECK(bspline_exact(3, rat_of(1, 4)) == rat_of(11, 16));
  CHECK(bspline_exact(4, rat_of(3, 5)) == rat_of(311, 750));
  CHECK(bspline_exact(5, rat_of(1, 2)) == rat_of(11, 24));
  CHECK(bspline_exact(6, rat_of(0, 1)) == rat_of(11, 20));
  CHECK(bspline_exact(7, rat_of(7, 6)) == rat_of(14833, 87480));
  CHECK(bspline_exact(8, rat_of(2, 3)) == rat_of(241897, 688905));
}

TEST_CASE("B-spline structural properties") {
  Rng rng(31);
  for (int k = 2; k <= 10; ++k) {
    // symmetry and support
    for (int t = 0; t < 20; ++t) {
      Rat x = rat_of(static_cast<long long>(rng.next_below(4 * k)) - 2 * k,
                     1 + static_cast<long long>(rng.next_below(7)));
      CHECK(bspline_exact(k, x) == bspline_exact(k, -x));
      Rat hw = rat_of(k, 2);
      if (x > -hw && x < hw) {
        CHECK(bspline_exact(k, x) > 0);
      } else {
        CHECK(bspline_exact(k, x) == 0);
      }
    }
    CHECK(bspline_exact(k, rat_of(k, 2)) == 0);
    CHECK(bspline_exact(k, rat_of(-k, 2)) == 0);
    // partition of unity: integer translates sum to 1
    for (int t = 0; t < 8; ++t) {
      Rat x = rat_of(static_cast<long long>(rng.next_below(13)) - 6,
                     1 + static_cast<long long>(rng.next_below(5)));
      Rat sum = 0;
      for (int a = -k - 4; a <= k + 4; ++a) sum += bspline_exact(k, x - rat_of(a, 1));
      CHECK(sum == 1);
    }
    // double path agrees with the exact path
    for (int t = 0; t < 10; ++t) {
      double x = rng.uniform(-0.6 * k, 0.6 * k);
      double exact = to_double(bspline_exact(k, rat_from_double(x)));
      CHECK(bspline(k, x) == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("tensor product structure and accessors") {
  TestFunction f(3, {rat_of(2, 1), rat_of(1, 2), rat_of(5, 3)});
  CHECK(f.order() == 3);
  CHECK(f.dimension() == 3);
  CHECK(f.scales()[2] == rat_of(5, 3));
  RatVec x = {rat_of(1, 2), rat_of(-1, 8), rat_of(1, 1)};
  Rat want = bspline_exact(3, rat_of(1, 4)) * bspline_exact(3, rat_of(-1, 4)) *
             bspline_exact(3, rat_of(3, 5));
  CHECK(f.eval_exact(x) == want);
  CHECK(f.support_halfwidth(0) == rat_of(3, 1));
  CHECK(f.support_halfwidth(1) == rat_of(3, 4));
  CHECK(f.support_halfwidth(2) == rat_of(5, 2));
  CHECK(f.value_at_zero() == bspline_exact(3, 0) * bspline_exact(3, 0) * bspline_exact(3, 0));
  double r = f.support_radius();
  CHECK(r * r >= 9.0 + 9.0 / 16 + 25.0 / 4 - 1e-12);
  CHECK_THROWS_AS(f.eval_exact({rat_of(0, 1)}), std::invalid_argument);
  CHECK_THROWS_AS(f.eval({0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(f.eval_ft({0.0}), std::invalid_argument);
}

TEST_CASE("fourier transform values") {
  // a=1, k=2, t=1/2: a sinc(pi/2)^2 = (2/pi)^2
  TestFunction f(2, {rat_of(1, 1)});
  double two_over_pi = 2.0 / M_PI;
  CHECK(f.eval_ft_axis(0, 0.5) == doctest::Approx(two_over_pi * two_over_pi).epsilon(1e-15));
  // fhat(0) = prod a_i, exactly
  TestFunction g(4, {rat_of(3, 2), rat_of(7, 5)});
  CHECK(g.eval_ft({0.0, 0.0}) == doctest::Approx(21.0 / 10).epsilon(1e-15));
  CHECK(g.eval_ft_axis(0, 0.0) == 1.5);
  // integer frequencies for a = 1 are zeros of the transform
  TestFunction h(5, {rat_of(1, 1)});
  for (int m = 1; m <= 4; ++m) CHECK(std::abs(h.eval_ft_axis(0, m)) < 1e-70);
  // factorization across axes
  CHECK(g.eval_ft({0.3, -0.7}) ==
        doctest::Approx(g.eval_ft_axis(0, 0.3) * g.eval_ft_axis(1, -0.7)).epsilon(1e-15));
}

TEST_CASE("fourier tail envelopes are certified") {
  TestFunction f(3, {rat_of(4, 3)});
  double a = 4.0 / 3.0;
  Rng rng(77);
  for (int t = 0; t < 200; ++t) {
    double M = rng.uniform(0.3, 6.0);
    double sup = f.ft_axis_sup_bound(0, M);
    double at = M + rng.uniform(0.0, 10.0);
    CHECK(std::abs(f.eval_ft_axis(0, at)) <= sup);
    CHECK(std::abs(f.eval_ft_axis(0, -at)) <= sup);
  }
  // tail bound dominates an actual lattice tail sum
  double M = 2.0, spacing = 0.5;
  double bound = f.ft_axis_tail_bound(0, M, spacing);
  double sum = 0;
  for (int j = 0; j < 4000; ++j) sum += std::abs(f.eval_ft_axis(0, M + spacing * j));
  CHECK(sum <= bound);
  CHECK(bound < 1.0);  // decays like M^{1-k}; must not be vacuous
  // monotone in M
  CHECK(f.ft_axis_tail_bound(0, 4.0, spacing) <= f.ft_axis_tail_bound(0, 2.0, spacing));
  (void)a;
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(TestFunction(1, {rat_of(1, 1)}), ConfigError);
  CHECK_THROWS_AS(TestFunction(33, {rat_of(1, 1)}), ConfigError);
  CHECK_THROWS_AS(TestFunction(2, {}), ConfigError);
  CHECK_THROWS_AS(TestFunction(2, {rat_of(0, 1)}), ConfigError);
  CHECK_THROWS_AS(TestFunction(2, {rat_of(-1, 2)}), ConfigError);
  CHECK_THROWS_AS(bspline_exact(1, rat_of(0, 1)), ConfigError);
}
