#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "bslab/errors.hpp"
#include "bslab/lattice.hpp"
#include "bslab/rng.hpp"
#include "doctest.h"

using namespace bslab;

static RatMat mk(int r, int c, std::vector<long long> entries) {
  RatMat m(r, c);
  int t = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = rat_of(entries[t++], 1);
  return m;
}

TEST_CASE("Z^2 ball of squared radius 4 has 13 points") {
  auto pts = enumerate_points(RatMat::identity(2), rat_of(4, 1));
  CHECK(pts.size() == 13);
  std::set<std::pair<long long, long long>> got;
  bool has_zero = false;
  for (const auto& p : pts) {
    got.insert({p.coeffs[0], p.coeffs[1]});
    CHECK(p.norm2 <= rat_of(4, 1));
    CHECK(p.norm2 == p.vec[0] * p.vec[0] + p.vec[1] * p.vec[1]);
    if (p.coeffs[0] == 0 && p.coeffs[1] == 0) has_zero = true;
  }
  CHECK(got.size() == 13);  // no duplicates
  CHECK(has_zero);
  CHECK(got.count({2, 0}) == 1);
  CHECK(got.count({1, 1}) == 1);
  CHECK(got.count({2, 1}) == 0);  // norm2 = 5
  auto no_zero = enumerate_points(RatMat::identity(2), rat_of(4, 1), false);
  CHECK(no_zero.size() == 12);
}

TEST_CASE("enumeration is exact at the boundary radius") {
  // diag(1, 3/2): point (0, ±1) has norm2 exactly 9/4
  RatMat B = RatMat::identity(2);
  B.at(1, 1) = rat_of(3, 2);
  auto on = enumerate_points(B, rat_of(9, 4), false);
  auto off = enumerate_points(B, rat_of(9, 4) - rat_of(1, 1000000), false);
  CHECK(on.size() == off.size() + 2);
}

TEST_CASE("shortest vector on diagonal and sheared bases") {
  LatticeBasis d(mk(2, 2, {3, 0, 0, 2}));
  auto sv = shortest_vector(d);
  CHECK(sv.norm2 == rat_of(4, 1));
  // shear hides the short vector in a combination of basis columns
  LatticeBasis sh(mk(2, 2, {1, 5, 0, 1}));  // columns (1,0), (5,1)
  auto sv2 = shortest_vector(sh);
  CHECK(sv2.norm2 == rat_of(1, 1));
  // 3D: basis with a known minimal vector of norm2 2
  LatticeBasis t(mk(3, 3, {1, 1, 7, 0, 1, 3, 0, 0, 2}));
  CHECK(shortest_vector(t).norm2 <= rat_of(2, 1));
  CHECK(shortest_vector(t).norm2 > 0);
}

TEST_CASE("covolume, dual pairing, dual involution") {
  RatMat M = mk(3, 3, {2, 1, 0, 0, 1, 4, 1, 0, 3});
  LatticeBasis L(M);
  CHECK(L.covolume() == rat_of(10, 1));
  LatticeBasis D = L.dual();
  // <b_i, b*_j> = delta_ij
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rat dot = 0;
      for (int r = 0; r < 3; ++r) dot += M.at(r, i) * D.matrix().at(r, j);
      CHECK(dot == (i == j ? rat_of(1, 1) : rat_of(0, 1)));
    }
  CHECK(D.covolume() * L.covolume() == 1);
  CHECK(D.dual().same_lattice(L));
}

TEST_CASE("same_lattice is invariant under unimodular column changes") {
  RatMat M = mk(2, 2, {2, 1, 1, 3});
  LatticeBasis L(M);
  RatMat U = mk(2, 2, {3, 1, 2, 1});  // det 1
  CHECK(LatticeBasis(mat_mul(M, U)).same_lattice(L));
  RatMat V = mk(2, 2, {2, 0, 0, 1});  // index-2 sublattice
  CHECK(!LatticeBasis(mat_mul(M, V)).same_lattice(L));
  CHECK_THROWS_AS(LatticeBasis(mk(2, 2, {1, 2, 2, 4})), ConfigError);
}

TEST_CASE("enumeration budget is enforced") {
  RatMat I = RatMat::identity(3);
  CHECK_THROWS_AS(enumerate_coeffs(I, rat_of(10000, 1), 50), BudgetExceeded);
}

TEST_CASE("enumerate_coeffs handles rectangular full-column-rank input") {
  // embed Z^1 into the plane along (3/5, 4/5): unit column, so coeffs m with
  // m^2 <= 4 are -2..2
  RatMat A = mk(2, 1, {3, 4});
  for (int i = 0; i < 2; ++i) A.at(i, 0) /= 5;
  auto cs = enumerate_coeffs(A, rat_of(4, 1));
  CHECK(cs.size() == 5);
  CHECK(std::is_sorted(cs.begin(), cs.end()));
}

TEST_CASE("families") {
  auto ss = family_stretch_squeeze();
  for (long long n = 1; n <= 6; ++n) {
    LatticeBasis L = ss.member(n);
    CHECK(L.covolume() == rat_of(n, 1));
    // dual of diag(n^2, 1/n) is diag(1/n^2, n): its shortest vector shrinks
    CHECK(L.dual().matrix().at(0, 0) * rat_of(n * n, 1) == 1);
  }
  CHECK(shortest_vector(ss.member(4)).norm2 == rat_of(1, 16));

  LatticeBasis L0(mk(2, 2, {1, 0, 0, 2}));
  auto dil = family_dilation(L0);
  CHECK(dil.member(3).covolume() == rat_of(18, 1));
  CHECK(shortest_vector(dil.member(3)).norm2 == rat_of(9, 1));

  auto chain = family_index_chain(L0);
  CHECK(chain.member(5).covolume() == rat_of(10, 1));
  // member(n) is a sublattice of member(1)
  for (long long n = 2; n <= 5; ++n) {
    LatticeBasis Ln = chain.member(n);
    RatMat C = mat_mul(inverse(L0.matrix()), Ln.matrix());
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(is_integer(C.at(i, j)));
  }
  CHECK(chain.member(1).same_lattice(L0));
}

TEST_CASE("random bases: shortest vector certified by direct enumeration") {
  Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    int d = 2 + static_cast<int>(rng.next_below(2));
    RatMat B(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        B.at(i, j) = rat_of(static_cast<long long>(rng.next_below(9)) - 4, 1 + (i == j ? 0 : 1));
    if (det(B) == 0) continue;
    LatticeBasis L(B);
    auto sv = shortest_vector(L);
    CHECK(sv.norm2 > 0);
    // no nonzero point strictly inside that norm ball
    auto inside = enumerate_points(B, sv.norm2, false);
    for (const auto& p : inside) CHECK(p.norm2 >= sv.norm2);
  }
}
