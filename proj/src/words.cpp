#include "bslab/words.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "bslab/errors.hpp"

namespace bslab {

namespace {

int letter_rank(int l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

Word free_reduce(const Word& w) {
  Word out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

}  // namespace

Word word_inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

Word word_concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += 'g' + std::to_string(std::abs(w[i]));
    if (w[i] < 0) s += "^-1";
  }
  return s;
}

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return letter_rank(a[i]) < letter_rank(b[i]);
  return false;
}

MarkedGroup::MarkedGroup(GroupKind kind, int rank) : kind_(kind), rank_(rank) {
  if (rank < 1 || rank > 64) throw ConfigError("group rank must be in [1, 64]");
}

MarkedGroup MarkedGroup::free_group(int rank) { return MarkedGroup(GroupKind::kFree, rank); }

MarkedGroup MarkedGroup::free_abelian(int rank) {
  return MarkedGroup(GroupKind::kFreeAbelian, rank);
}

MarkedGroup MarkedGroup::surface_group(int genus) {
  // Dehn's algorithm needs small cancellation; the genus-1 relator is too
  // short for it (that group is free_abelian(2) anyway).
  if (genus < 2) throw ConfigError("surface_group requires genus >= 2");
  if (genus > 16) throw ConfigError("surface_group: genus too large");
  MarkedGroup g(GroupKind::kSurface, 2 * genus);
  for (int i = 1; i <= genus; ++i) {
    int a = 2 * i - 1, b = 2 * i;
    g.relator_.insert(g.relator_.end(), {a, b, -a, -b});
  }
  // all cyclic rotations of the relator and of its inverse
  for (const Word& base : {g.relator_, word_inverse(g.relator_)}) {
    for (size_t s = 0; s < base.size(); ++s) {
      Word rot(base.begin() + s, base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + s);
      g.dehn_table_.push_back(std::move(rot));
    }
  }
  return g;
}

std::string MarkedGroup::describe() const {
  switch (kind_) {
    case GroupKind::kFree:
      return "free(" + std::to_string(rank_) + ")";
    case GroupKind::kSurface:
      return "surface(" + std::to_string(rank_ / 2) + ")";
    case GroupKind::kFreeAbelian:
      return "free_abelian(" + std::to_string(rank_) + ")";
  }
  return "?";
}

void MarkedGroup::check_letters(const Word& w) const {
  for (int l : w)
    if (l == 0 || std::abs(l) > rank_)
      throw ConfigError("word letter " + std::to_string(l) + " outside alphabet of " +
                        describe());
}

Word MarkedGroup::dehn_reduce(Word w) const {
  const size_t L = relator_.size();
  const size_t half = L / 2 + 1;  // replace subwords strictly longer than L/2
  w = free_reduce(w);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t pos = 0; pos + half <= w.size() && !changed; ++pos) {
      for (const Word& t : dehn_table_) {
        size_t match = 0;
        while (match < L && pos + match < w.size() && w[pos + match] == t[match]) ++match;
        if (match < half) continue;
        // u = t-prefix of length `match`, so u = inverse(t-suffix) in the group
        Word tail(t.begin() + match, t.end());
        Word repl = word_inverse(tail);
        Word next(w.begin(), w.begin() + pos);
        next.insert(next.end(), repl.begin(), repl.end());
        next.insert(next.end(), w.begin() + pos + match, w.end());
        w = free_reduce(next);  // strictly shorter, so this terminates
        changed = true;
        break;
      }
    }
  }
  return w;
}

Word MarkedGroup::reduce(const Word& w) const {
  check_letters(w);
  switch (kind_) {
    case GroupKind::kFree:
      return free_reduce(w);
    case GroupKind::kSurface:
      return dehn_reduce(w);
    case GroupKind::kFreeAbelian: {
      std::vector<long long> x = ab(w);
      Word out;
      for (int i = 0; i < rank_; ++i) {
        int letter = x[i] >= 0 ? i + 1 : -(i + 1);
        for (long long c = 0; c < std::llabs(x[i]); ++c) out.push_back(letter);
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<long long> MarkedGroup::ab(const Word& w) const {
  check_letters(w);
  std::vector<long long> x(rank_, 0);
  for (int l : w) x[std::abs(l) - 1] += (l > 0 ? 1 : -1);
  return x;
}

std::vector<Word> group_ball(const MarkedGroup& g, int r, long long budget) {
  if (r < 0) throw ConfigError("group_ball: radius must be >= 0");
  std::vector<Word> accepted;
  // For kinds with canonical normal forms the seen-set suffices; the surface
  // kind needs group equality, bucketed by the abelianization invariant.
  std::set<Word> seen_canonical;
  std::map<std::vector<long long>, std::vector<size_t>> ab_buckets;
  bool canonical = g.kind() != GroupKind::kSurface;

  auto is_new = [&](const Word& w) {
    if (canonical) return seen_canonical.find(w) == seen_canonical.end();
    auto it = ab_buckets.find(g.ab(w));
    if (it == ab_buckets.end()) return true;
    for (size_t idx : it->second)
      if (g.equal(w, accepted[idx])) return false;
    return true;
  };
  auto insert = [&](const Word& w) {
    if (canonical)
      seen_canonical.insert(w);
    else
      ab_buckets[g.ab(w)].push_back(accepted.size() - 1);
  };

  std::vector<Word> frontier{Word{}};
  if (canonical) seen_canonical.insert(Word{});
  for (int level = 1; level <= r; ++level) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int i = 1; i <= g.rank(); ++i) {
        for (int letter : {i, -i}) {
          Word cand = w;
          cand.push_back(letter);
          Word red = g.reduce(cand);
          if (red.empty()) continue;
          if (static_cast<int>(red.size()) < level) continue;  // seen at earlier level
          if (!is_new(red)) continue;
          if (static_cast<long long>(accepted.size()) >= budget)
            throw BudgetExceeded("group ball exceeds element budget " +
                                 std::to_string(budget));
          accepted.push_back(red);
          insert(red);
          next.push_back(std::move(red));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(accepted.begin(), accepted.end(), word_less);
  return accepted;
}

}  // namespace bslab
