#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "bslab/errors.hpp"
#include "bslab/euclid.hpp"
#include "doctest.h"

using namespace bslab;

static TestFunction f33() { return TestFunction(2, {rat_of(3, 1), rat_of(3, 1)}); }

TEST_CASE("geometric sums over the standard plane lattice are exact") {
  LatticeBasis Z2(RatMat::identity(2));
  CHECK(geometric_sum(Z2, f33()) == rat_of(9, 1));
  CHECK(geometric_sum(Z2, f33(), true) == rat_of(8, 1));
  // one-dimensional partition sums: sum_b beta_k(b/a) = a for integer a
  for (int k = 2; k <= 6; ++k)
    for (long long a = 1; a <= 4; ++a) {
      LatticeBasis Z1(RatMat::identity(1));
      CHECK(geometric_sum(Z1, TestFunction(k, {rat_of(a, 1)})) == rat_of(a, 1));
    }
  // basis change does not affect the sum
  RatMat sheared(2, 2);
  sheared.at(0, 0) = rat_of(1, 1);
  sheared.at(0, 1) = rat_of(7, 1);
  sheared.at(1, 0) = rat_of(0, 1);
  sheared.at(1, 1) = rat_of(1, 1);
  CHECK(geometric_sum(LatticeBasis(sheared), f33()) == rat_of(9, 1));
}

TEST_CASE("two-sided identity on the standard lattice") {
  LatticeBasis Z2(RatMat::identity(2));
  SpectralSum s = spectral_sum(Z2, f33(), 1e-11);
  CHECK(std::abs(s.value - 9.0) <= s.err_bound + 1e-10);
  PlancherelDefect pd = plancherel_defect(Z2, f33());
  CHECK(pd.geometric == rat_of(8, 1));
  CHECK(pd.agree);
  CHECK(std::abs(pd.spectral - 8.0) <= pd.spectral_err + 1e-10);
}

TEST_CASE("divergent-covolume family keeps a nonvanishing defect") {
  auto fam = family_stretch_squeeze();
  TestFunction f(2, {rat_of(1, 1), rat_of(1, 1)});
  for (long long n = 1; n <= 8; ++n) {
    PlancherelDefect pd = plancherel_defect(fam.member(n), f);
    CHECK(pd.geometric == rat_of(n - 1, 1));
    CHECK(pd.agree);
  }
  CHECK(fam.member(5).covolume() == rat_of(5, 1));
}

TEST_CASE("dilation family is eventually defect-free at every radius") {
  LatticeBasis Z2(RatMat::identity(2));
  auto fam = family_dilation(Z2);
  std::vector<Rat> radii = {rat_of(3, 2)};
  ScanResult sr = scan_family(fam, {f33()}, radii, 1, 5, 1e-10);
  REQUIRE(sr.rows.size() == 5);
  CHECK(sr.rows[0].counts[0] == 8);  // (±1,0),(0,±1),(±1,±1)
  for (size_t i = 1; i < sr.rows.size(); ++i) CHECK(sr.rows[i].counts[0] == 0);
  // support radius of f33 is 3 sqrt(2); once the shortest vector exceeds it
  // the defect is exactly zero
  for (const auto& row : sr.rows) {
    CHECK(row.covol == rat_of(row.n * row.n, 1));
    CHECK(row.systole2 == rat_of(row.n * row.n, 1));
    CHECK(row.systole == doctest::Approx(static_cast<double>(row.n)).epsilon(1e-15));
    CHECK(row.poisson_resid <= 1e-9);
    if (row.n >= 5) CHECK(row.defects[0] == 0);
    if (row.n <= 2) CHECK(row.defects[0] > 0);
  }
}

TEST_CASE("index chain scan keeps covolume proportional to the index") {
  LatticeBasis Z2(RatMat::identity(2));
  auto fam = family_index_chain(Z2);
  ScanResult sr = scan_family(fam, {f33()}, {rat_of(1, 1), rat_of(5, 2)}, 1, 6, 1e-10);
  REQUIRE(sr.rows.size() == 6);
  for (const auto& row : sr.rows) {
    CHECK(row.covol == rat_of(row.n, 1));
    CHECK(row.counts.size() == 2);
    CHECK(row.defects.size() == 1);
    CHECK(row.counts[0] <= row.counts[1]);
    CHECK(row.poisson_resid <= 1e-9);
  }
  // n = 1 is the full lattice: 4 points in the unit ball, defect 8
  CHECK(sr.rows[0].counts[0] == 4);
  CHECK(sr.rows[0].defects[0] == rat_of(8, 1));
  // sublattice nZ x Z always keeps (0, ±1): counts stay positive
  for (const auto& row : sr.rows) CHECK(row.counts[0] >= 2);
  CHECK(sr.tail_tol == 1e-10);
}

TEST_CASE("defect monotone growth along the counterexample family") {
  auto fam = family_stretch_squeeze();
  TestFunction f(2, {rat_of(1, 1), rat_of(1, 1)});
  ScanResult sr = scan_family(fam, {f}, {rat_of(1, 2)}, 1, 12, 1e-10);
  Rat prev = rat_of(-1, 1);
  for (const auto& row : sr.rows) {
    CHECK(row.defects[0] == rat_of(row.n - 1, 1));
    CHECK(row.defects[0] > prev);
    prev = row.defects[0];
    CHECK(row.covol == rat_of(row.n, 1));
  }
}
