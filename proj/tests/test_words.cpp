#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "bslab/errors.hpp"
#include "bslab/rng.hpp"
#include "bslab/words.hpp"
#include "doctest.h"

using namespace bslab;

static Word rand_word(Rng& rng, int rank, int len) {
  Word w;
  for (int i = 0; i < len; ++i) {
    int letter = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(rank)));
    w.push_back(rng.next_below(2) ? letter : -letter);
  }
  return w;
}

TEST_CASE("word primitives") {
  Word w = {1, -2, 3};
  CHECK(word_inverse(w) == Word{-3, 2, -1});
  CHECK(word_concat({1, 2}, {-2, 3}) == Word{1, 2, -2, 3});  // no reduction here
  CHECK(word_inverse({}) == Word{});
  CHECK(word_to_string({}) != "");  // identity has a printable name
  CHECK(word_less({1}, {-1, 1}));   // shorter first
  CHECK(word_less({1}, {-1}));      // g1 before g1^{-1}
  CHECK(word_less({-1}, {2}));
  CHECK(!word_less({2}, {2}));
}

TEST_CASE("free reduction") {
  MarkedGroup F2 = MarkedGroup::free_group(2);
  CHECK(F2.reduce({1, -1}) == Word{});
  CHECK(F2.reduce({1, 2, -2, -1}) == Word{});
  CHECK(F2.reduce({1, 2, -2, 1}) == Word{1, 1});
  CHECK(F2.is_identity({}));
  CHECK(!F2.is_identity({1, 2}));
  CHECK(F2.equal({1, 2, -2}, {1}));
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    Word w = rand_word(rng, 2, static_cast<int>(rng.next_below(12)));
    Word r = F2.reduce(w);
    CHECK(F2.reduce(r) == r);  // idempotent
    CHECK(F2.is_identity(word_concat(w, word_inverse(w))));
    CHECK(F2.equal(w, r));
    CHECK(F2.ab(w) == F2.ab(r));  // reduction preserves the abelianization
  }
}

TEST_CASE("surface relator and random relator insertions are killed") {
  MarkedGroup S2 = MarkedGroup::surface_group(2);
  CHECK(S2.rank() == 4);
  CHECK(S2.relator().size() == 8);  // [a1,b1][a2,b2], four letters each
  CHECK(S2.is_identity(S2.relator()));
  CHECK(S2.is_identity(word_inverse(S2.relator())));
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    Word w = rand_word(rng, 4, static_cast<int>(rng.next_below(8)));
    // insert the relator (or a cyclic rotation of its inverse) mid-word
    Word rel = S2.relator();
    if (rng.next_below(2)) rel = word_inverse(rel);
    size_t rot = rng.next_below(rel.size());
    std::rotate(rel.begin(), rel.begin() + static_cast<long>(rot), rel.end());
    size_t pos = rng.next_below(w.size() + 1);
    Word spliced(w.begin(), w.begin() + static_cast<long>(pos));
    spliced.insert(spliced.end(), rel.begin(), rel.end());
    spliced.insert(spliced.end(), w.begin() + static_cast<long>(pos), w.end());
    CHECK(S2.equal(spliced, w));
    CHECK(S2.is_identity(word_concat(spliced, word_inverse(w))));
  }
  // abelianization of the relator vanishes
  CHECK(S2.ab(S2.relator()) == std::vector<long long>(4, 0));
}

TEST_CASE("free abelian reduction matches exponent arithmetic") {
  MarkedGroup A3 = MarkedGroup::free_abelian(3);
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    Word w = rand_word(rng, 3, static_cast<int>(rng.next_below(14)));
    auto e = A3.ab(w);
    Word r = A3.reduce(w);
    CHECK(A3.ab(r) == e);
    CHECK(A3.reduce(r) == r);
    // identity iff all exponents vanish
    bool zero = e[0] == 0 && e[1] == 0 && e[2] == 0;
    CHECK(A3.is_identity(w) == zero);
    // commutativity: a shuffled word is the same element
    Word shuffled = w;
    for (size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.next_below(i)]);
    CHECK(A3.equal(w, shuffled));
  }
}

TEST_CASE("ball sizes in standard groups") {
  MarkedGroup F2 = MarkedGroup::free_group(2);
  CHECK(group_ball(F2, 1).size() == 4);
  CHECK(group_ball(F2, 2).size() == 16);
  CHECK(group_ball(F2, 3).size() == 52);  // 4 + 12 + 36
  MarkedGroup S2 = MarkedGroup::surface_group(2);
  CHECK(group_ball(S2, 1).size() == 8);
  CHECK(group_ball(S2, 2).size() == 64);
  CHECK(group_ball(S2, 3).size() == 456);
  CHECK(group_ball(S2, 4).size() == 3192);
  MarkedGroup A2 = MarkedGroup::free_abelian(2);
  CHECK(group_ball(A2, 1).size() == 4);
  CHECK(group_ball(A2, 2).size() == 12);  // l1-ball minus origin
  CHECK(group_ball(A2, 3).size() == 24);
}

TEST_CASE("balls are duplicate-free, inverse-closed, sorted") {
  for (auto g : {MarkedGroup::free_group(2), MarkedGroup::surface_group(2),
                 MarkedGroup::free_abelian(3)}) {
    auto ball = group_ball(g, 3);
    for (size_t i = 0; i + 1 < ball.size(); ++i) CHECK(word_less(ball[i], ball[i + 1]));
    for (size_t i = 0; i + 1 < ball.size(); ++i)
      for (size_t j = i + 1; j < std::min(ball.size(), i + 12); ++j)
        CHECK(!g.equal(ball[i], ball[j]));
    for (const auto& w : ball) {
      CHECK(!g.is_identity(w));
      // inverse present: find by group equality
      bool found = false;
      Word inv = g.reduce(word_inverse(w));
      for (const auto& u : ball)
        if (u == inv || g.equal(u, inv)) {
          found = true;
          break;
        }
      CHECK(found);
    }
  }
}

TEST_CASE("ball budget and validation") {
  MarkedGroup F3 = MarkedGroup::free_group(3);
  CHECK_THROWS_AS(group_ball(F3, 8, 1000), BudgetExceeded);
  MarkedGroup F2 = MarkedGroup::free_group(2);
  CHECK_THROWS(F2.reduce({5}));   // letter out of range
  CHECK_THROWS(F2.reduce({0}));   // zero is not a letter
  CHECK_THROWS(MarkedGroup::surface_group(1));  // genus >= 2 required
  CHECK_THROWS(MarkedGroup::free_group(0));
}
