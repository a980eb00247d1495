#include "bslab/schreier.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bslab/errors.hpp"

namespace bslab {

SubgroupScheme::SubgroupScheme(const MarkedGroup& group,
                               std::vector<std::vector<long long>> chi,
                               std::vector<SchemeCoord> coords, bool absolute)
    : group_(group), chi_(std::move(chi)), coords_(std::move(coords)), absolute_(absolute) {
  int dim = group_.ab_dim();
  int m = static_cast<int>(chi_.size());
  if (coords_.size() != chi_.size())
    throw ConfigError("scheme: one coordinate constraint per chi row required");
  for (const auto& row : chi_)
    if (static_cast<int>(row.size()) != dim)
      throw ConfigError("scheme: chi row length must equal abelianization rank");
  for (const auto& c : coords_) {
    if (c.kind != CoordKind::kFree && c.value < 1)
      throw ConfigError("scheme: moduli and scale bases must be >= 1");
  }
  if (m > dim) throw ConfigError("scheme: chi cannot be surjective (too many rows)");
  if (m > 0) {
    // index formula [G : Gamma_n] = prod(moduli) requires chi onto Z^m
    IntMat M(m, dim);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < dim; ++j) M.at(i, j) = big_of(chi_[i][j]);
    std::vector<BigInt> divs = elementary_divisors(M);
    for (int i = 0; i < m; ++i)
      if (i >= static_cast<int>(divs.size()) || divs[i] != 1)
        throw ConfigError("scheme: chi must be surjective onto Z^m "
                          "(elementary divisors must all be 1)");
  }
}

SubgroupScheme SubgroupScheme::single_exponent(const MarkedGroup& group, int coord,
                                               bool absolute) {
  if (coord < 0 || coord >= group.ab_dim())
    throw ConfigError("single_exponent: coordinate out of range");
  std::vector<long long> row(group.ab_dim(), 0);
  row[coord] = 1;
  return SubgroupScheme(group, {row}, {SchemeCoord{CoordKind::kScaled, 1}}, absolute);
}

SubgroupScheme SubgroupScheme::homology_cover(const MarkedGroup& group,
                                              const std::vector<int>& free_coords,
                                              bool absolute) {
  int dim = group.ab_dim();
  std::vector<std::vector<long long>> chi;
  std::vector<SchemeCoord> coords;
  for (int i = 0; i < dim; ++i) {
    std::vector<long long> row(dim, 0);
    row[i] = 1;
    chi.push_back(std::move(row));
    bool fr = std::find(free_coords.begin(), free_coords.end(), i) != free_coords.end();
    coords.push_back(fr ? SchemeCoord{CoordKind::kFree, 1}
                        : SchemeCoord{CoordKind::kScaled, 1});
  }
  return SubgroupScheme(group, std::move(chi), std::move(coords), absolute);
}

std::string SubgroupScheme::describe() const {
  std::string s = group_.describe() + " chi[";
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ',';
    switch (coords_[i].kind) {
      case CoordKind::kFree: s += "free"; break;
      case CoordKind::kFixed: s += "fixed:" + std::to_string(coords_[i].value); break;
      case CoordKind::kScaled: s += "scaled:" + std::to_string(coords_[i].value); break;
    }
  }
  s += absolute_ ? "] abs" : "] rel";
  return s;
}

std::vector<long long> SubgroupScheme::chi_of(const Word& w) const {
  std::vector<long long> x = group_.ab(w);
  std::vector<long long> v(chi_.size(), 0);
  for (size_t i = 0; i < chi_.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) v[i] += chi_[i][j] * x[j];
  return v;
}

long long SubgroupScheme::modulus(int coord, long long n) const {
  if (n < 1) throw ConfigError("scheme: n must be >= 1");
  switch (coords_[coord].kind) {
    case CoordKind::kFree: return 1;
    case CoordKind::kFixed: return coords_[coord].value;
    case CoordKind::kScaled: return n * coords_[coord].value;
  }
  throw std::logic_error("unreachable");
}

long long SubgroupScheme::index(long long n) const {
  long long idx = 1;
  for (int i = 0; i < chi_dim(); ++i) idx *= modulus(i, n);
  return idx;
}

bool SubgroupScheme::in_gamma_n(const Word& w, long long n) const {
  std::vector<long long> v = chi_of(w);
  for (int i = 0; i < chi_dim(); ++i)
    if (v[i] % modulus(i, n) != 0) return false;
  return true;
}

bool SubgroupScheme::in_gamma_inf(const Word& reduced) const {
  if (absolute_) return reduced.empty();
  std::vector<long long> v = chi_of(reduced);
  for (int i = 0; i < chi_dim(); ++i) {
    switch (coords_[i].kind) {
      case CoordKind::kFree: break;
      case CoordKind::kFixed:
        if (v[i] % coords_[i].value != 0) return false;
        break;
      case CoordKind::kScaled:
        if (v[i] != 0) return false;
        break;
    }
  }
  return true;
}

bool SubgroupScheme::in_difference(const Word& reduced, long long n) const {
  return in_gamma_n(reduced, n) && !in_gamma_inf(reduced);
}

namespace {

Word sorted_power_word(const std::vector<long long>& x) {
  Word w;
  for (size_t i = 0; i < x.size(); ++i) {
    int letter = x[i] >= 0 ? static_cast<int>(i) + 1 : -(static_cast<int>(i) + 1);
    for (long long c = 0; c < std::llabs(x[i]); ++c) w.push_back(letter);
  }
  return w;
}

}  // namespace

std::vector<Word> SubgroupScheme::coset_reps(long long n, long long index_budget,
                                             long long node_budget) const {
  long long idx = index(n);
  if (idx > index_budget)
    throw BudgetExceeded("subgroup index " + std::to_string(idx) + " exceeds budget " +
                         std::to_string(index_budget));
  int dim = group_.ab_dim();
  int m = chi_dim();

  auto residue_of = [&](const std::vector<long long>& v) {
    std::vector<long long> key(m);
    for (int i = 0; i < m; ++i) {
      long long q = modulus(i, n);
      key[i] = ((v[i] % q) + q) % q;
    }
    return key;
  };

  // Breadth-first over abelianization vectors x (layer = |x|_1 = word length);
  // each x stands for the sorted power word with that exponent vector. The
  // first layer reaching a residue gives its minimal length; within a layer
  // the lexicographically smallest word wins.
  struct Node {
    std::vector<long long> x, v;  // v = chi * x, maintained incrementally
  };
  std::map<std::vector<long long>, Word> reps;
  std::set<std::vector<long long>> visited;
  std::vector<Node> layer{Node{std::vector<long long>(dim, 0), std::vector<long long>(m, 0)}};
  visited.insert(layer[0].x);
  long long nodes = 1;

  while (true) {
    for (const Node& node : layer) {
      std::vector<long long> key = residue_of(node.v);
      Word w = sorted_power_word(node.x);
      auto it = reps.find(key);
      if (it == reps.end())
        reps.emplace(std::move(key), std::move(w));
      else if (word_less(w, it->second))
        it->second = std::move(w);
    }
    if (static_cast<long long>(reps.size()) == idx) break;
    if (layer.empty())
      throw InvariantViolation("coset search exhausted without covering all residues");

    std::vector<Node> next;
    for (const Node& node : layer) {
      for (int i = 0; i < dim; ++i) {
        for (int delta : {1, -1}) {
          Node nb = node;
          nb.x[i] += delta;
          if (!visited.insert(nb.x).second) continue;
          if (++nodes > node_budget)
            throw BudgetExceeded("coset representative search exceeds node budget");
          for (int row = 0; row < m; ++row) nb.v[row] += delta * chi_[row][i];
          next.push_back(std::move(nb));
        }
      }
    }
    layer = std::move(next);
  }

  std::vector<Word> out;
  out.reserve(reps.size());
  for (auto& kv : reps) out.push_back(std::move(kv.second));
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

namespace {

// Per-coset counts #(x^{-1}(Gamma_n \ Gamma_inf) x cap ball) with conjugation
// through the reducer. The ball must be sorted by word length.
std::vector<long long> per_coset_counts(const SubgroupScheme& scheme,
                                        const std::vector<Word>& reps,
                                        const std::vector<Word>& ball, long long n) {
  const MarkedGroup& g = scheme.group();
  std::vector<long long> counts;
  counts.reserve(reps.size());
  for (const Word& x : reps) {
    Word xinv = word_inverse(x);
    long long c = 0;
    for (const Word& delta : ball) {
      Word conj = g.reduce(word_concat(word_concat(x, delta), xinv));
      if (scheme.in_difference(conj, n)) ++c;
    }
    counts.push_back(c);
  }
  return counts;
}

void check_class_function(const std::vector<long long>& counts) {
  for (long long c : counts)
    if (c != counts[0])
      throw InvariantViolation(
          "per-coset counts disagree; conjugation-invariance of chi violated");
}

}  // namespace

RelativeSums relative_sums(const SubgroupScheme& scheme, long long n, int r,
                           long long ball_budget) {
  if (r < 0) throw ConfigError("relative_sums: r must be >= 0");
  std::vector<Word> ball = group_ball(scheme.group(), r, ball_budget);
  std::vector<Word> reps = scheme.coset_reps(n);
  std::vector<long long> counts = per_coset_counts(scheme, reps, ball, n);
  check_class_function(counts);
  RelativeSums s;
  s.index = static_cast<long long>(reps.size());
  long long total = 0, nonzero = 0;
  for (long long c : counts) {
    total += c;
    nonzero += (c > 0);
    s.max_per_coset = std::max(s.max_per_coset, c);
  }
  s.count_sum = rat_of(total, s.index);
  s.sign_sum = rat_of(nonzero, s.index);
  return s;
}

Rat relative_count_sum(const SubgroupScheme& scheme, long long n, int r,
                       long long ball_budget) {
  return relative_sums(scheme, n, r, ball_budget).count_sum;
}

Rat relative_sign_sum(const SubgroupScheme& scheme, long long n, int r,
                      long long ball_budget) {
  return relative_sums(scheme, n, r, ball_budget).sign_sum;
}

long long uniform_count_bound(const SubgroupScheme& scheme, long long n_from, long long n_to,
                              int r, long long ball_budget) {
  if (n_from < 1 || n_to < n_from) throw ConfigError("uniform_count_bound: bad n range");
  std::vector<Word> ball = group_ball(scheme.group(), r, ball_budget);
  long long bound = 0;
  for (long long n = n_from; n <= n_to; ++n) {
    std::vector<Word> reps = scheme.coset_reps(n);
    for (long long c : per_coset_counts(scheme, reps, ball, n))
      bound = std::max(bound, c);
  }
  return bound;
}

SchreierScan scan_relative(const SubgroupScheme& scheme, long long n_from, long long n_to,
                           const std::vector<int>& r_list, long long ball_budget) {
  if (n_from < 1 || n_to < n_from) throw ConfigError("scan_relative: bad n range");
  if (r_list.empty()) throw ConfigError("scan_relative: need at least one radius");
  for (int r : r_list)
    if (r < 0) throw ConfigError("scan_relative: radii must be >= 0");

  int r_max = *std::max_element(r_list.begin(), r_list.end());
  std::vector<Word> ball = group_ball(scheme.group(), r_max, ball_budget);
  // group_ball returns words sorted by length = distance, so the sub-ball of
  // radius r is a prefix; record the boundary for each requested r.
  std::vector<size_t> prefix_end(r_max + 1, 0);
  for (int r = 0; r <= r_max; ++r) {
    size_t e = (r == 0) ? 0 : prefix_end[r - 1];
    while (e < ball.size() && static_cast<int>(ball[e].size()) <= r) ++e;
    prefix_end[r] = e;
  }

  const MarkedGroup& g = scheme.group();
  long long count_n = n_to - n_from + 1;
  // totals[ni][ri] etc., assembled into rows after bounds are known
  std::vector<std::vector<long long>> totals(count_n), nonzeros(count_n), maxima(count_n);
  std::vector<long long> indices(count_n);

  for (long long ni = 0; ni < count_n; ++ni) {
    long long n = n_from + ni;
    std::vector<Word> reps = scheme.coset_reps(n);
    indices[ni] = static_cast<long long>(reps.size());
    size_t nr = r_list.size();
    totals[ni].assign(nr, 0);
    nonzeros[ni].assign(nr, 0);
    maxima[ni].assign(nr, 0);
    // per-coset running count over the length-sorted ball; snapshot at each r
    std::vector<std::vector<long long>> per_r_counts(nr);
    for (const Word& x : reps) {
      Word xinv = word_inverse(x);
      long long running = 0;
      size_t pos = 0;
      std::vector<long long> at_r(r_max + 1, 0);
      for (int r = 1; r <= r_max; ++r) {
        while (pos < prefix_end[r]) {
          Word conj = g.reduce(word_concat(word_concat(x, ball[pos]), xinv));
          if (scheme.in_difference(conj, n)) ++running;
          ++pos;
        }
        at_r[r] = running;
      }
      for (size_t ri = 0; ri < nr; ++ri) per_r_counts[ri].push_back(at_r[r_list[ri]]);
    }
    for (size_t ri = 0; ri < nr; ++ri) {
      check_class_function(per_r_counts[ri]);
      for (long long c : per_r_counts[ri]) {
        totals[ni][ri] += c;
        nonzeros[ni][ri] += (c > 0);
        maxima[ni][ri] = std::max(maxima[ni][ri], c);
      }
    }
  }

  std::vector<long long> bound_per_r(r_list.size(), 0);
  for (long long ni = 0; ni < count_n; ++ni)
    for (size_t ri = 0; ri < r_list.size(); ++ri)
      bound_per_r[ri] = std::max(bound_per_r[ri], maxima[ni][ri]);

  SchreierScan scan;
  scan.group_desc = g.describe();
  scan.scheme_desc = scheme.describe();
  for (long long ni = 0; ni < count_n; ++ni) {
    for (size_t ri = 0; ri < r_list.size(); ++ri) {
      SchreierRow row;
      row.n = n_from + ni;
      row.r = r_list[ri];
      row.count_sum = rat_of(totals[ni][ri], indices[ni]);
      row.sign_sum = rat_of(nonzeros[ni][ri], indices[ni]);
      row.bound = bound_per_r[ri];
      row.index = indices[ni];
      scan.rows.push_back(row);
    }
  }
  return scan;
}

}  // namespace bslab
