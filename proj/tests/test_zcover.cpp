#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numeric>

#include "bslab/errors.hpp"
#include "bslab/euclid.hpp"
#include "bslab/rng.hpp"
#include "bslab/zcover.hpp"
#include "doctest.h"

using namespace bslab;

static LatticeBasis zd(int d) { return LatticeBasis(RatMat::identity(d)); }

static TestFunction f33() { return TestFunction(2, {rat_of(3, 1), rat_of(3, 1)}); }

static ZCoverScheme standard() { return ZCoverScheme(zd(2), {0, 1}); }

TEST_CASE("scheme validation") {
  CHECK_THROWS_AS(ZCoverScheme(zd(2), {2, 4}), ConfigError);  // not primitive
  CHECK_THROWS_AS(ZCoverScheme(zd(2), {0, 0}), ConfigError);
  CHECK_THROWS_AS(ZCoverScheme(zd(2), {1}), ConfigError);  // dimension mismatch
  ZCoverScheme s = standard();
  CHECK(s.dual_shift() == RatVec{rat_of(0, 1), rat_of(1, 1)});
  CHECK(s.kernel_basis().rows() == 2);
  CHECK(s.kernel_basis().cols() == 1);
  CHECK(s.chi_of_coeffs({7, 3}) == 3);
  // dual shift represents chi exactly on a skew basis too
  RatMat B(2, 2);
  B.at(0, 0) = rat_of(1, 1);
  B.at(0, 1) = rat_of(1, 2);
  B.at(1, 1) = rat_of(3, 4);
  B.at(1, 0) = rat_of(0, 1);
  ZCoverScheme sk(LatticeBasis(B), {1, 2});
  for (long long k1 = -3; k1 <= 3; ++k1)
    for (long long k2 = -3; k2 <= 3; ++k2) {
      RatVec x = sk.basis().apply({k1, k2});
      Rat dot = sk.dual_shift()[0] * x[0] + sk.dual_shift()[1] * x[1];
      CHECK(dot == rat_of(k1 + 2 * k2, 1));
    }
}

TEST_CASE("laurent data of the twisted orbital sum") {
  TwistedTrace tw = twisted_geometric(standard(), f33());
  CHECK(tw.degree == 2);
  CHECK(tw.symmetric);
  CHECK(tw.covol == rat_of(1, 1));
  CHECK(tw.coeffs.at(0) == rat_of(3, 1));
  CHECK(tw.coeffs.at(1) == rat_of(2, 1));
  CHECK(tw.coeffs.at(-1) == rat_of(2, 1));
  CHECK(tw.coeffs.at(2) == rat_of(1, 1));
  CHECK(tw.coeffs.at(-2) == rat_of(1, 1));
  CHECK(tw.coeffs.size() == 5);
  // alternating sum at theta = 1/2: 3 - 2*2 + 2*1 = 1
  CHECK(std::abs(tw.value(0.5).real() - 1.0) < 1e-14);
  CHECK(std::abs(tw.value(0.5).imag()) < 1e-14);
  CHECK(std::abs(tw.value(0.0).real() - 9.0) < 1e-14);
  CHECK(tw.value(0.0).real() == to_double(geometric_sum(standard().basis(), f33())));
  // Hermitian in theta
  CHECK(std::abs(tw.value(0.3) - std::conj(tw.value(-0.3))) < 1e-14);
  // fiber filter: multiples of 2 pick c_{-2} + c_0 + c_2
  CHECK(tw.fiber_sum_multiples(2) == rat_of(5, 1));
  CHECK(tw.fiber_sum_multiples(2, false) == rat_of(2, 1));
  CHECK(tw.fiber_sum_multiples(1) == rat_of(9, 1));
  CHECK(tw.fiber_sum_multiples(3) == rat_of(3, 1));
}

TEST_CASE("twisted poisson summation at rational twists") {
  ZCoverScheme s = standard();
  TwistedTrace tw = twisted_geometric(s, f33());
  for (auto [p, q] :
       {std::pair<long long, long long>{0, 1}, {1, 2}, {1, 4}, {1, 3}, {2, 5}}) {
    EngineResult r = twisted_spectral(s, rat_of(p, q), f33(), 1e-11);
    double geo = tw.value(static_cast<double>(p) / static_cast<double>(q)).real();
    CHECK(std::abs(r.value - geo) <= r.err_bound + 1e-12);
  }
  // periodicity in the twist
  EngineResult a = twisted_spectral(s, rat_of(1, 4), f33(), 1e-11);
  EngineResult b = twisted_spectral(s, rat_of(5, 4), f33(), 1e-11);
  CHECK(std::abs(a.value - b.value) <= a.err_bound + b.err_bound + 1e-12);
}

TEST_CASE("relative trace is independent of the tower member") {
  ZCoverScheme s = standard();
  CHECK(l2_trace(s, f33()) == rat_of(3, 1));
  // stretching transverse to the kernel leaves the kernel sum unchanged
  RatMat B(2, 2);
  B.at(0, 0) = rat_of(1, 1);
  B.at(1, 1) = rat_of(5, 1);
  ZCoverScheme s2(LatticeBasis(B), {0, 1});
  CHECK(l2_trace(s2, f33()) == rat_of(3, 1));

  IndependenceReport ind = trace_independence_check(s, f33(), {1, 2, 3, 4, 5});
  CHECK(ind.all_equal);
  CHECK(ind.l2 == rat_of(3, 1));
  REQUIRE(ind.traces.size() == 5);
  for (const Rat& t : ind.traces) CHECK(t == rat_of(3, 1));
}

TEST_CASE("defects vanish beyond the chi range of the support") {
  DefectReport def = kernel_defect_check(standard(), f33(), {1, 2, 3, 4, 5});
  CHECK(def.chi_max == 2);
  CHECK(def.zero_from == 3);
  CHECK(def.full_sum == rat_of(9, 1));
  CHECK(def.kernel_sum == rat_of(3, 1));
  REQUIRE(def.defects.size() == 5);
  CHECK(def.defects[0] == rat_of(6, 1));
  CHECK(def.defects[1] == rat_of(2, 1));
  CHECK(def.defects[2] == 0);
  CHECK(def.defects[3] == 0);
  CHECK(def.defects[4] == 0);
}

TEST_CASE("circle quadrature recovers the relative trace exactly") {
  ZCoverScheme s = standard();
  QuadratureReport q5 = circle_quadrature_check(s, f33(), 5);
  CHECK(q5.degree == 2);
  CHECK(q5.exact_match);
  CHECK(q5.l2 == rat_of(3, 1));
  CHECK(q5.float_err <= 1e-12);
  QuadratureReport q64 = circle_quadrature_check(s, f33(), 64);
  CHECK(q64.exact_match);
  CHECK(q64.exact_quadrature == q5.exact_quadrature);
  CHECK(q64.float_err <= 1e-12);
  // the stated precondition m > 2*degree is enforced
  CHECK_THROWS_AS(circle_quadrature_check(s, f33(), 4), ConfigError);

  MeasureReport mr = spectral_measure_integral(s, f33(), 5, 1e-11);
  CHECK(std::abs(mr.value - 3.0) <= mr.err_bound + 1e-12);
  CHECK(mr.err_bound <= 1e-10);
}

TEST_CASE("point-supported function degenerates to the value at zero") {
  ZCoverScheme s = standard();
  TestFunction tiny(2, {rat_of(1, 2), rat_of(1, 2)});
  TwistedTrace t2 = twisted_geometric(s, tiny);
  CHECK(t2.degree == 0);
  DefectReport d2 = kernel_defect_check(s, tiny, {1, 2, 3});
  for (const Rat& dd : d2.defects) CHECK(dd == 0);
  QuadratureReport q1 = circle_quadrature_check(s, tiny, 1);
  CHECK(q1.exact_match);
  CHECK(q1.l2 == tiny.eval_exact({rat_of(0, 1), rat_of(0, 1)}));
}

TEST_CASE("collapsing family: kernel trace diverges linearly") {
  LatticeFamily fam = family_stretch_squeeze();
  for (long long n = 1; n <= 6; ++n) {
    ZCoverScheme sn(fam.member(n), {1, 0});
    CHECK(l2_trace(sn, f33()) == rat_of(3 * n, 1));
  }
}

TEST_CASE("random skew schemes satisfy twisted poisson") {
  Rng rng(2026);
  int done = 0;
  for (int trial = 0; trial < 12; ++trial) {
    int d = 1 + static_cast<int>(rng.next_below(3));
    RatMat B(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        long long num = (i == j) ? 1 + static_cast<long long>(rng.next_below(3))
                                 : static_cast<long long>(rng.next_below(3)) - 1;
        B.at(i, j) = rat_of(num, 1 + static_cast<long long>(rng.next_below(2)));
      }
    if (det(B) == 0) continue;
    std::vector<long long> chi(d);
    chi[static_cast<int>(rng.next_below(static_cast<uint64_t>(d)))] = 1;
    for (int i = 0; i < d; ++i)
      if (chi[i] == 0) chi[i] = static_cast<long long>(rng.next_below(3)) - 1;
    long long g = 0;
    for (long long c : chi) g = std::gcd(g, c);
    if (g != 1) continue;
    ZCoverScheme sr(LatticeBasis(B), chi);
    // higher orders in higher dimension keep the dual tail certifiable
    int k = (d == 3) ? 7 + static_cast<int>(rng.next_below(2))
                     : (d == 2 ? 5 + static_cast<int>(rng.next_below(4))
                               : 2 + static_cast<int>(rng.next_below(7)));
    RatVec scales(d);
    for (int i = 0; i < d; ++i)
      scales[i] = rat_of(1 + static_cast<long long>(rng.next_below(4)),
                         1 + static_cast<long long>(rng.next_below(2)));
    TestFunction fr(k, scales);
    Rat theta = rat_of(static_cast<long long>(rng.next_below(7)), 7);
    TwistedTrace tr = twisted_geometric(sr, fr);
    EngineResult er = twisted_spectral(sr, theta, fr, 1e-10);
    double geo = tr.value(to_double(theta)).real();
    CHECK(std::abs(er.value - geo) <= er.err_bound + 1e-11 * (1 + std::abs(geo)));
    ++done;
  }
  CHECK(done >= 6);
}
