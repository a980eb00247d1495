#pragma once

#include <string>
#include <vector>

#include "bslab/rational.hpp"
#include "bslab/words.hpp"

namespace bslab {

// Per-coordinate constraint on the chi-image defining the subgroup chain:
//   kFree   : no constraint (modulus 1 for every n)
//   kFixed  : value q  -> coordinate must be divisible by q, independent of n
//   kScaled : value b  -> coordinate must be divisible by n*b; in the limit
//             subgroup this coordinate is pinned to exactly 0
enum class CoordKind { kFree, kFixed, kScaled };

struct SchemeCoord {
  CoordKind kind = CoordKind::kScaled;
  long long value = 1;
};

// Subgroup chain Gamma_n = chi^{-1}(per-coordinate targets) inside a marked
// group, where chi is an integer matrix applied to the abelianization. The
// limit subgroup Gamma_inf pins scaled coordinates to 0 (or is trivial in
// absolute mode). Kernels of homomorphisms are normal, so Gamma_inf is normal
// in every Gamma_n.
class SubgroupScheme {
 public:
  // chi: one row per constrained coordinate, each of length group.ab_dim();
  // must be surjective onto Z^m (checked via elementary divisors) so that
  // [G : Gamma_n] equals the product of the finite moduli.
  SubgroupScheme(const MarkedGroup& group, std::vector<std::vector<long long>> chi,
                 std::vector<SchemeCoord> coords, bool absolute);

  // chi = the single abelianization coordinate `coord`, scaled modulus n.
  static SubgroupScheme single_exponent(const MarkedGroup& group, int coord, bool absolute);
  // chi = full abelianization; coordinates in `free_coords` are unconstrained,
  // the rest have scaled modulus n.
  static SubgroupScheme homology_cover(const MarkedGroup& group,
                                       const std::vector<int>& free_coords, bool absolute);

  const MarkedGroup& group() const { return group_; }
  int chi_dim() const { return static_cast<int>(chi_.size()); }
  bool absolute() const { return absolute_; }
  std::string describe() const;

  std::vector<long long> chi_of(const Word& w) const;
  long long modulus(int coord, long long n) const;
  long long index(long long n) const;

  bool in_gamma_n(const Word& w, long long n) const;
  bool in_gamma_inf(const Word& reduced) const;
  // membership in Gamma_n \ Gamma_inf; `reduced` must be in normal form
  // (absolute mode tests nontriviality by emptiness)
  bool in_difference(const Word& reduced, long long n) const;

  // Minimal-length coset representatives for G / Gamma_n, one per chi-residue
  // class, ties broken lexicographically; deterministic. Words are sorted
  // generator powers (minimal length is achievable in that shape because one
  // letter moves the abelianization by one unit).
  std::vector<Word> coset_reps(long long n, long long index_budget = 10000,
                               long long node_budget = 4000000) const;

 private:
  MarkedGroup group_;
  std::vector<std::vector<long long>> chi_;
  std::vector<SchemeCoord> coords_;
  bool absolute_;
};

struct RelativeSums {
  Rat count_sum;   // (1/index) sum over cosets of #(x^{-1}(Gn\Ginf)x cap B_r)
  Rat sign_sum;    // (1/index) sum over cosets of sign(#...)
  long long max_per_coset = 0;
  long long index = 0;
};

// Exact evaluation of both relative sums at one (n, r). Conjugation is done
// by the group reducer; membership via chi of the reduced conjugate. All
// per-coset counts must agree (chi is a class function); a mismatch signals
// a reducer bug and throws InvariantViolation.
RelativeSums relative_sums(const SubgroupScheme& scheme, long long n, int r,
                           long long ball_budget = 1000000);

Rat relative_count_sum(const SubgroupScheme& scheme, long long n, int r,
                       long long ball_budget = 1000000);
Rat relative_sign_sum(const SubgroupScheme& scheme, long long n, int r,
                      long long ball_budget = 1000000);

// Max over n in [n_from, n_to] and over cosets of the per-coset count; the
// uniform constant certifying count_sum <= bound * sign_sum on the range.
long long uniform_count_bound(const SubgroupScheme& scheme, long long n_from,
                              long long n_to, int r, long long ball_budget = 1000000);

struct SchreierRow {
  long long n = 0;
  int r = 0;
  Rat count_sum;
  Rat sign_sum;
  long long bound = 0;  // uniform over the scanned n range at this r
  long long index = 0;
};

struct SchreierScan {
  std::string group_desc;
  std::string scheme_desc;
  std::vector<SchreierRow> rows;  // ordered by (n, r)
};

SchreierScan scan_relative(const SubgroupScheme& scheme, long long n_from, long long n_to,
                           const std::vector<int>& r_list, long long ball_budget = 1000000);

}  // namespace bslab
