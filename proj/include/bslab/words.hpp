#pragma once

#include <string>
#include <vector>

namespace bslab {

// A word over generators g1..g_rank: letter +i means g_i, -i means g_i^{-1}.
using Word = std::vector<int>;

Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);
std::string word_to_string(const Word& w);

// Letter order g1 < g1^{-1} < g2 < g2^{-1} < ...; words compare by
// (length, lexicographic on this order). Used for all deterministic ties.
bool word_less(const Word& a, const Word& b);

enum class GroupKind { kFree, kSurface, kFreeAbelian };

// A group with a fixed marked generating set and a solvable word problem:
// free groups (free reduction), genus-g surface groups (Dehn's algorithm on
// the relator [a_1,b_1]...[a_g,b_g], valid for these small-cancellation
// presentations), and free-abelian groups (exponent-vector collapse).
class MarkedGroup {
 public:
  static MarkedGroup free_group(int rank);
  static MarkedGroup surface_group(int genus);
  static MarkedGroup free_abelian(int rank);

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }       // number of generators
  int ab_dim() const { return rank_; }     // abelianization is Z^rank
  const Word& relator() const { return relator_; }
  std::string describe() const;

  // Normal form: free reduction, Dehn reduction, or sorted exponent word.
  // Idempotent; reduce(w . w^{-1}) is empty. For the surface kind the result
  // is an identity-test normal form, not a canonical geodesic form.
  Word reduce(const Word& w) const;
  bool is_identity(const Word& w) const { return reduce(w).empty(); }
  bool equal(const Word& a, const Word& b) const {
    return is_identity(word_concat(a, word_inverse(b)));
  }

  // Exponent vector of the abelianization (letter +i adds e_i).
  std::vector<long long> ab(const Word& w) const;

 private:
  MarkedGroup(GroupKind kind, int rank);
  void check_letters(const Word& w) const;
  Word dehn_reduce(Word w) const;

  GroupKind kind_;
  int rank_;
  Word relator_;
  std::vector<Word> dehn_table_;  // cyclic rotations of relator and inverse
};

// All nontrivial elements of word length <= r, duplicate-free (equality
// decided by the group's reducer), sorted by (length, lex). Throws
// BudgetExceeded if the ball would exceed `budget` elements.
std::vector<Word> group_ball(const MarkedGroup& g, int r, long long budget = 1000000);

}  // namespace bslab
