#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "bslab/errors.hpp"
#include "bslab/euclid.hpp"
#include "bslab/rng.hpp"
#include "bslab/spectral.hpp"
#include "doctest.h"

using namespace bslab;

static RatMat rmk(int r, int c, std::vector<Rat> entries) {
  RatMat m(r, c);
  int t = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = entries[t++];
  return m;
}

TEST_CASE("axis elimination gives exact closed values") {
  // f with a = 4: fhat(m) = 4 sinc(4 pi m)^2 vanishes unless 4m is... rather,
  // summing fhat over Z: Poisson gives sum_b f(b) = sum beta2(b/4), b = -3..3.
  TestFunction f(2, {rat_of(4, 1)});
  EngineResult r = affine_dual_sum(f, RatMat::identity(1), {rat_of(0, 1)}, 1e-12);
  Rat exact = 0;
  for (int b = -4; b <= 4; ++b) exact += bspline_exact(2, rat_of(b, 4));
  CHECK(r.value == doctest::Approx(to_double(exact)).epsilon(1e-14));
  CHECK(r.err_bound <= 1e-14);  // closed path: only rounding, no truncation
  CHECK(r.points == 0);
  CHECK(r.method.find("kill") != std::string::npos);

  // non-integral shift blocks the kill; the half-integer arguments give a
  // genuine zeta-type sum, checked against a long brute-force truncation
  TestFunction g(6, {rat_of(3, 1)});
  EngineResult s = affine_dual_sum(g, RatMat::identity(1), {rat_of(1, 2)}, 1e-12);
  double brute = 0;
  for (int m = -3000; m <= 3000; ++m) brute += g.eval_ft_axis(0, 0.5 + m);
  CHECK(s.value == doctest::Approx(brute).epsilon(1e-9));
  CHECK(s.err_bound <= 1e-12);
}

TEST_CASE("closed rank-1 path matches brute force on scaled sublattices") {
  // P = (5/3), a = 2, k = 3: period structure exercises residue classes
  TestFunction f(3, {rat_of(2, 1)});
  RatMat P = rmk(1, 1, {rat_of(5, 3)});
  EngineResult r = affine_dual_sum(f, P, {rat_of(1, 7)}, 1e-12);
  double brute = 0;
  for (int m = -300000; m <= 300000; ++m)
    brute += f.eval_ft_axis(0, 1.0 / 7 + 5.0 / 3 * m);
  CHECK(r.value == doctest::Approx(brute).epsilon(1e-10));
  CHECK(r.points == 0);  // rank-1 must resolve in closed form
}

TEST_CASE("generic two-dimensional enumeration with certified tail") {
  TestFunction f(5, {rat_of(1, 1), rat_of(1, 1)});
  // irrational-looking skew (still rational): P = [[1, 1/3], [1/4, 1]]
  RatMat P = rmk(2, 2, {rat_of(1, 1), rat_of(1, 3), rat_of(1, 4), rat_of(1, 1)});
  EngineResult r = affine_dual_sum(f, P, {rat_of(1, 5), rat_of(0, 1)}, 1e-9);
  double brute = 0;
  for (int m1 = -60; m1 <= 60; ++m1)
    for (int m2 = -60; m2 <= 60; ++m2) {
      double x1 = 0.2 + m1 + m2 / 3.0;
      double x2 = m1 / 4.0 + m2;
      brute += f.eval_ft({x1, x2});
    }
  CHECK(std::abs(r.value - brute) <= r.err_bound + 1e-9 + 1e-12);
  CHECK(r.points > 0);
  CHECK(r.err_bound <= 1e-9);
}

TEST_CASE("poisson identity across random bases and orders") {
  Rng rng(5150);
  int done = 0;
  for (int trial = 0; trial < 60 && done < 30; ++trial) {
    int d = 1 + static_cast<int>(rng.next_below(3));
    int k;
    if (d == 3)
      k = 7 + static_cast<int>(rng.next_below(2));
    else if (d == 2)
      k = 5 + static_cast<int>(rng.next_below(4));
    else
      k = 2 + static_cast<int>(rng.next_below(7));
    RatVec scales;
    for (int i = 0; i < d; ++i)
      scales.push_back(rat_of(9 + static_cast<long long>(rng.next_below(7)),
                              8 + static_cast<long long>(rng.next_below(5))));
    TestFunction f(k, scales);
    RatMat B = RatMat::identity(d);
    for (int i = 0; i < d; ++i)
      B.at(i, i) = rat_of(8 + static_cast<long long>(rng.next_below(7)),
                          6 + static_cast<long long>(rng.next_below(4)));
    int nshear = static_cast<int>(rng.next_below(3));
    for (int s = 0; s < nshear && d > 1; ++s) {
      int i = static_cast<int>(rng.next_below(d));
      int j = static_cast<int>(rng.next_below(d));
      if (i == j) continue;
      long long sign = rng.next_below(2) ? 1 : -1;
      for (int r = 0; r < d; ++r) B.at(j, r) += rat_of(sign, 1) * B.at(i, r);
    }
    LatticeBasis L(B);
    Rat geo = geometric_sum(L, f);
    SpectralSum sp = spectral_sum(L, f, 1e-11);
    CHECK(std::abs(to_double(geo) - sp.value) <= 1e-10);
    ++done;
  }
  CHECK(done == 30);
}

TEST_CASE("empty and zero sums are detected structurally") {
  // a = 1, points 1 + 2Z: every argument is a nonzero integer, so every sinc
  // factor vanishes and the engine must certify an exact zero
  TestFunction f(4, {rat_of(1, 1)});
  RatMat P(1, 1);
  P.at(0, 0) = rat_of(2, 1);
  EngineResult r = affine_dual_sum(f, P, {rat_of(1, 1)}, 1e-12);
  CHECK(r.value == 0.0);
  CHECK(r.err_bound == 0.0);
  CHECK(r.points == 0);
}

TEST_CASE("dimension and validation errors") {
  TestFunction f(3, {rat_of(1, 1), rat_of(1, 1)});
  CHECK_THROWS(affine_dual_sum(f, RatMat::identity(1), {rat_of(0, 1)}, 1e-10));
  RatMat sing(2, 2);  // all zeros
  CHECK_THROWS(affine_dual_sum(f, sing, {rat_of(0, 1), rat_of(0, 1)}, 1e-10));
}

TEST_CASE("budget failure is reported, not silently truncated") {
  // d = 3 with low order decays so slowly that the certified tail needs an
  // astronomical point count; the engine must refuse rather than approximate
  TestFunction f(2, {rat_of(1, 1), rat_of(1, 1), rat_of(1, 1)});
  RatMat P = rmk(3, 3,
                 {rat_of(1, 1), rat_of(1, 3), rat_of(1, 5), rat_of(1, 4), rat_of(1, 1),
                  rat_of(1, 7), rat_of(1, 9), rat_of(1, 8), rat_of(1, 1)});
  CHECK_THROWS_AS(
      affine_dual_sum(f, P, {rat_of(1, 2), rat_of(1, 3), rat_of(1, 5)}, 1e-10, 100000),
      BudgetExceeded);
}

TEST_CASE("method strings name the reductions taken") {
  TestFunction f(6, {rat_of(1, 1), rat_of(1, 1)});
  // block diagonal: must split into two independent closed pieces
  RatMat P = rmk(2, 2, {rat_of(2, 3), rat_of(0, 1), rat_of(0, 1), rat_of(3, 7)});
  EngineResult r = affine_dual_sum(f, P, {rat_of(1, 5), rat_of(1, 11)}, 1e-12);
  CHECK(r.method.find("split") != std::string::npos);
  double brute = 0;
  for (int m1 = -3000; m1 <= 3000; ++m1) brute += f.eval_ft_axis(0, 0.2 + 2.0 / 3 * m1);
  double brute2 = 0;
  for (int m2 = -3000; m2 <= 3000; ++m2) brute2 += f.eval_ft_axis(1, 1.0 / 11 + 3.0 / 7 * m2);
  CHECK(r.value == doctest::Approx(brute * brute2).epsilon(1e-10));
}
