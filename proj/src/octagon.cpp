#include "bslab/octagon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "bslab/errors.hpp"
#include "bslab/numerics.hpp"

namespace bslab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

MoebiusMatrix rotation(double phi) {
  // acts on the disk as multiplication by exp(i*phi)
  double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
  return {c, s, -s, c};
}

Word tword_reduce(Word w) {
  Word out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

double origin_disp(const MoebiusMatrix& m) {
  return disk_dist(Cx(0, 0), m.apply_disk(Cx(0, 0)));
}

}  // namespace

MoebiusMatrix OctagonGroup::t_letter(int letter) const {
  int k = std::abs(letter) - 1;
  if (letter == 0 || k >= 4) throw ConfigError("octagon letter must lie in {+-1..+-4}");
  return letter > 0 ? t_[k] : t_[k].inverse();
}

MoebiusMatrix OctagonGroup::word_matrix(const Word& w) const {
  MoebiusMatrix m = MoebiusMatrix::identity();
  for (int l : w) m = mul(m, t_letter(l));
  return m;
}

long long OctagonGroup::chi_t_letter(int letter) {
  // exponent functional n0 - n2 - n3 on translation exponents
  static constexpr long long kBase[4] = {1, 0, -1, -1};
  int k = std::abs(letter) - 1;
  if (letter == 0 || k >= 4) throw ConfigError("octagon letter must lie in {+-1..+-4}");
  return letter > 0 ? kBase[k] : -kBase[k];
}

long long OctagonGroup::chi_t_word(const Word& w) const {
  long long s = 0;
  for (int l : w) s += chi_t_letter(l);
  return s;
}

bool OctagonGroup::in_octagon(Cx z, double slack) const {
  // positive slack admits points up to slack (Euclidean) beyond a side;
  // negative slack demands that much clearance inside every side
  if (std::abs(z) >= 1.0) return false;
  for (const Cx& c : side_centers_) {
    if (std::abs(z - c) < side_radius_ - slack) return false;
  }
  return true;
}

double OctagonGroup::dist_to_boundary(Cx z) const {
  if (std::abs(z) >= 1.0) throw ConfigError("point must lie in the open disk");
  double denom = side_radius_ * (1.0 - std::norm(z));
  double best = kInf;
  for (const Cx& c : side_centers_) {
    // sinh d(z, geodesic) = | |z-c|^2 - rho^2 | / (rho (1-|z|^2))
    double s = std::abs(std::norm(z - c) - side_radius_ * side_radius_) / denom;
    best = std::min(best, std::asinh(s));
  }
  return best;
}

OctagonGroup::Reduced OctagonGroup::dirichlet_reduce(Cx z, int max_steps) const {
  if (std::abs(z) >= 1.0) throw ConfigError("point must lie in the open disk");
  Word letters;
  double cur = std::abs(z);
  for (int step = 0; step < max_steps; ++step) {
    int best_l = 0;
    Cx best_z;
    double best = cur - 1e-15;
    for (int l : {1, -1, 2, -2, 3, -3, 4, -4}) {
      Cx w = t_letter(l).apply_disk(z);
      double r = std::abs(w);
      if (r < best) {
        best = r;
        best_z = w;
        best_l = l;
      }
    }
    if (best_l == 0) {
      // no strict decrease: z satisfies all eight bisector inequalities,
      // i.e. lies in the closed octagon
      std::reverse(letters.begin(), letters.end());
      return {z, tword_reduce(letters)};
    }
    z = best_z;
    cur = std::abs(z);
    letters.push_back(best_l);
  }
  throw InvariantViolation("dirichlet_reduce exceeded its step budget");
}

Cx OctagonGroup::sample_point(Rng& rng) const {
  // polar inverse-CDF on the circumscribed hyperbolic disk, then rejection
  const double crm1 = std::cosh(rv_) - 1.0;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    double rh = std::acosh(1.0 + rng.next_double() * crm1);
    double th = 2.0 * kPi * rng.next_double();
    Cx z = std::polar(std::tanh(0.5 * rh), th);
    if (in_octagon(z, 0.0)) return z;
  }
  throw InvariantViolation("octagon rejection sampler stalled");
}

OctagonGroup OctagonGroup::build() {
  OctagonGroup g;
  const double sqrt2 = std::sqrt(2.0);
  g.ell_ = 2.0 * std::acosh(1.0 + sqrt2);
  g.rv_ = std::acosh(3.0 + 2.0 * sqrt2);
  g.side_center_abs_ = std::sqrt((sqrt2 + 1.0) / 2.0);
  g.side_radius_ = std::sqrt((sqrt2 - 1.0) / 2.0);
  for (int k = 0; k < 8; ++k) {
    g.side_centers_[k] = std::polar(g.side_center_abs_, 0.25 * kPi * k);
  }

  // side circles orthogonal to the unit circle: |c|^2 = 1 + rho^2
  if (std::abs(g.side_center_abs_ * g.side_center_abs_ -
               g.side_radius_ * g.side_radius_ - 1.0) > 1e-12) {
    throw InvariantViolation("side circles are not orthogonal to the boundary");
  }
  // each side is the perpendicular bisector of [0, t_k(0)]
  if (std::abs(std::tanh(0.25 * g.ell_) - (g.side_center_abs_ - g.side_radius_)) > 1e-12) {
    throw InvariantViolation("sides do not bisect the translations");
  }

  const double lam = std::exp(0.5 * g.ell_);
  const MoebiusMatrix t0{lam, 0, 0, 1.0 / lam};
  for (int k = 0; k < 4; ++k) {
    MoebiusMatrix r = rotation(0.25 * kPi * k);
    g.t_[k] = mul(mul(r, t0), r.inverse());
  }

  const double tl = std::tanh(0.5 * g.ell_);
  for (int k = 0; k < 4; ++k) {
    if (std::abs(g.t_[k].apply_disk(Cx(0, 0)) - std::polar(tl, 0.25 * kPi * k)) > 1e-12) {
      throw InvariantViolation("translation axis misplaced");
    }
    if (std::abs(translation_length(g.t_[k]) - g.ell_) > 1e-12) {
      throw InvariantViolation("translation length mismatch");
    }
  }

  // vertex angles: conformal model, so Euclidean tangent angles are hyperbolic
  const double vr = std::pow(2.0, -0.25);
  double angle_sum = 0.0;
  for (int k = 0; k < 8; ++k) {
    Cx v = std::polar(vr, kPi / 8 + 0.25 * kPi * k);
    for (int j : {k, (k + 1) % 8}) {
      if (std::abs(std::abs(v - g.side_centers_[j]) - g.side_radius_) > 1e-9) {
        throw InvariantViolation("vertex misses its side circles");
      }
    }
    Cx tangents[2];
    for (int s = 0; s < 2; ++s) {
      int j = (k + s) % 8;
      Cx mid = std::polar(g.side_center_abs_ - g.side_radius_, 0.25 * kPi * (k + s));
      Cx t = Cx(0, 1) * (v - g.side_centers_[j]);
      if (std::real(t * std::conj(mid - v)) < 0) t = -t;
      tangents[s] = t;
    }
    double ca = std::real(tangents[0] * std::conj(tangents[1])) /
                (std::abs(tangents[0]) * std::abs(tangents[1]));
    double ang = std::acos(std::clamp(ca, -1.0, 1.0));
    if (std::abs(ang - kPi / 4) > 1e-9) {
      throw InvariantViolation("vertex angle is not pi/4");
    }
    angle_sum += ang;
  }
  g.area_ = 6.0 * kPi - angle_sum;  // Gauss-Bonnet for an 8-gon
  if (std::abs(g.area_ - 4.0 * kPi) > 1e-9) {
    throw InvariantViolation("octagon area is not 4*pi");
  }

  const Word relator = {1, -2, 3, -4, -1, 2, -3, 4};
  g.relator_resid_ = g.word_matrix(relator).dist_mod_sign(MoebiusMatrix::identity());
  if (g.relator_resid_ > 1e-9) {
    throw InvariantViolation("side-pairing relation does not close");
  }
  if (g.chi_t_word(relator) != 0) {
    throw InvariantViolation("exponent functional does not kill the relation");
  }

  const Word xw[4] = {{1}, {-2}, {-2, 1, 3}, {-4, 3}};
  for (int i = 0; i < 4; ++i) g.x_[i] = g.word_matrix(xw[i]);
  if (g.chi_t_word(xw[0]) != 1 || g.chi_t_word(xw[1]) != 0 ||
      g.chi_t_word(xw[2]) != 0 || g.chi_t_word(xw[3]) != 0) {
    throw InvariantViolation("exponent functional wrong on marked generators");
  }
  auto comm = [](const MoebiusMatrix& A, const MoebiusMatrix& B) {
    return mul(mul(mul(A, B), A.inverse()), B.inverse());
  };
  MoebiusMatrix rel = mul(comm(g.x_[0], g.x_[1]), comm(g.x_[2], g.x_[3]));
  g.commutator_resid_ = rel.dist_mod_sign(MoebiusMatrix::identity());
  if (g.commutator_resid_ > 1e-9) {
    throw InvariantViolation("marked generators do not satisfy the genus-2 relation");
  }
  return g;
}

namespace {

// Hash grid for matrices mod sign. Numerical copies of one group element
// (reached along different multiplication paths) agree to ~1e-8 Frobenius,
// while distinct group elements at these displacements are >~1e-1 apart, so
// a confirm tolerance of 1e-6 sits orders of magnitude clear of both scales.
// Anything landing in the forbidden gap (1e-6, 1e-4] means that separation
// has broken down and is reported as an invariant violation, never merged or
// silently kept.
class DedupGrid {
 public:
  static constexpr double kConfirm = 1e-6;
  static constexpr double kForbidden = 1e-4;  // == cell size; probes span +-2 cells

  struct Hit {
    int idx = -1;
    double dist = kInf;
  };

  Hit find(const MoebiusMatrix& m, const std::vector<BallElement>& elems) const {
    Hit best;
    for (double sgn : {1.0, -1.0}) {
      long long q[4];
      quantize({sgn * m.a, sgn * m.b, sgn * m.c, sgn * m.d}, q);
      long long p[4];
      for (int d0 = -1; d0 <= 1; ++d0) {
        p[0] = q[0] + d0;
        for (int d1 = -1; d1 <= 1; ++d1) {
          p[1] = q[1] + d1;
          for (int d2 = -1; d2 <= 1; ++d2) {
            p[2] = q[2] + d2;
            for (int d3 = -1; d3 <= 1; ++d3) {
              p[3] = q[3] + d3;
              auto it = buckets_.find(key(p));
              if (it == buckets_.end()) continue;
              for (int idx : it->second) {
                double d = elems[idx].m.dist_mod_sign(m);
                if (d < best.dist) best = {idx, d};
              }
            }
          }
        }
      }
    }
    return best;
  }

  // -1 if new; index of the duplicate otherwise; throws on a gap hit
  int match(const MoebiusMatrix& m, const std::vector<BallElement>& elems) const {
    Hit h = find(m, elems);
    if (h.dist <= kConfirm) return h.idx;
    if (h.dist <= kForbidden) {
      throw InvariantViolation("group_ball: dedup scales collided");
    }
    return -1;
  }

  void insert(const MoebiusMatrix& m, int idx) {
    long long q[4];
    quantize(m, q);
    buckets_[key(q)].push_back(idx);
  }

 private:
  static void quantize(const MoebiusMatrix& m, long long q[4]) {
    q[0] = std::llround(m.a * 1e4);
    q[1] = std::llround(m.b * 1e4);
    q[2] = std::llround(m.c * 1e4);
    q[3] = std::llround(m.d * 1e4);
  }
  static uint64_t key(const long long q[4]) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (int i = 0; i < 4; ++i) {
      h ^= static_cast<uint64_t>(q[i]);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::unordered_map<uint64_t, std::vector<int>> buckets_;
};

}  // namespace

GroupBall group_ball(const OctagonGroup& g, double cutoff, double margin, long long budget) {
  if (cutoff <= 0 || margin < 0) throw ConfigError("group_ball: need cutoff > 0, margin >= 0");
  GroupBall ball;
  ball.cutoff = cutoff;
  ball.margin = margin;
  const double keep = cutoff + margin;
  const MoebiusMatrix id = MoebiusMatrix::identity();
  DedupGrid grid;
  std::vector<BallElement>& elems = ball.elements;
  std::vector<int> frontier;

  auto try_insert = [&](const MoebiusMatrix& m, const Word& w) {
    if (m.equal_mod_sign(id, DedupGrid::kConfirm)) return;
    double disp = origin_disp(m);
    if (disp > keep) return;
    long long chi = g.chi_t_word(w);
    int dup = grid.match(m, elems);
    if (dup >= 0) {
      // the exponent functional is a class function of the element, so any
      // two words landing on one matrix must agree
      if (elems[dup].chi != chi) {
        throw InvariantViolation("exponent sums disagree across dedup");
      }
      return;
    }
    if (static_cast<long long>(elems.size()) + 2 > budget) {
      throw BudgetExceeded("group_ball: element budget exhausted");
    }
    // keep the ball inverse-closed: insert gamma and gamma^{-1} together
    elems.push_back({w, m, disp, chi});
    grid.insert(m, static_cast<int>(elems.size()) - 1);
    frontier.push_back(static_cast<int>(elems.size()) - 1);
    MoebiusMatrix mi = m.inverse();
    if (grid.match(mi, elems) < 0) {
      elems.push_back({word_inverse(w), mi, disp, -chi});
      grid.insert(mi, static_cast<int>(elems.size()) - 1);
      frontier.push_back(static_cast<int>(elems.size()) - 1);
    }
  };

  for (int l : {1, -1, 2, -2, 3, -3, 4, -4}) try_insert(g.t_letter(l), Word{l});

  int rounds = 0;
  while (!frontier.empty()) {
    ++rounds;
    std::vector<int> cur;
    cur.swap(frontier);
    for (int idx : cur) {
      BallElement e = elems[idx];  // copy: elems reallocates during inserts
      for (int l : {1, -1, 2, -2, 3, -3, 4, -4}) {
        Word w = e.tword;
        if (!w.empty() && w.back() == -l) {
          w.pop_back();  // keep stored words freely reduced
        } else {
          w.push_back(l);
        }
        try_insert(mul(e.m, g.t_letter(l)), w);
      }
    }
  }

  // verification round: one-step products of everything present (and of the
  // identity) must already be present whenever they land under the cutoff
  long long violations = 0;
  auto check_product = [&](const MoebiusMatrix& m) {
    if (m.equal_mod_sign(id, DedupGrid::kConfirm)) return;
    if (origin_disp(m) <= cutoff && grid.match(m, elems) < 0) ++violations;
  };
  const size_t n = elems.size();
  for (int l : {1, -1, 2, -2, 3, -3, 4, -4}) check_product(g.t_letter(l));
  for (size_t i = 0; i < n; ++i) {
    for (int l : {1, -1, 2, -2, 3, -3, 4, -4}) {
      check_product(mul(elems[i].m, g.t_letter(l)));
    }
  }
  ball.saturated = violations == 0;
  ball.rounds = rounds + 1;

  std::sort(elems.begin(), elems.end(), [](const BallElement& x, const BallElement& y) {
    if (x.disp != y.disp) return x.disp < y.disp;
    return word_less(x.tword, y.tword);
  });
  return ball;
}

InjRad inj_rad(const GroupBall& ball, const OctagonGroup& g, const ChiCondition& cond, Cx z) {
  if (!cond.kernel && cond.n <= 0) throw ConfigError("subgroup level must be positive");
  const double d0 = disk_dist(Cx(0, 0), z);
  const double trusted = ball.cutoff - g.diameter();  // conservative completeness radius
  InjRad out;
  double best = kInf;
  for (const BallElement& e : ball.elements) {
    // d(z, gamma z) >= disp(gamma) - 2 d(0,z): once disp passes best + 2 d0
    // nothing later (sorted by disp) can improve the minimum
    if (e.disp > best + 2.0 * d0) break;
    if (!cond.matches(e.chi)) continue;
    double d = disk_dist(z, e.m.apply_disk(z));
    if (d < best) best = d;
  }
  if (best == kInf) {
    out.found = false;
    out.value = std::max(0.0, 0.5 * (trusted - 2.0 * d0));  // lower bound only
    out.certified = false;
    return out;
  }
  out.found = true;
  out.value = 0.5 * best;
  // exact iff every element that could displace z by <= best lies in the ball
  out.certified = ball.saturated && best + 2.0 * d0 <= trusted + 1e-12;
  return out;
}

BsEstimate mc_bs_probability(const OctagonGroup& g, const GroupBall& ball,
                             const ChiCondition& cond, double R, long long samples,
                             unsigned long long seed) {
  if (R <= 0) throw ConfigError("radius must be positive");
  if (samples <= 0) throw ConfigError("sample count must be positive");
  if (!cond.kernel && cond.n <= 0) throw ConfigError("subgroup level must be positive");
  const double trusted = ball.cutoff - g.diameter();
  BsEstimate out;
  out.samples = samples;
  out.cutoff = ball.cutoff;
  long long uncovered = 0;
  for (long long j = 0; j < samples; ++j) {
    Rng rng = Rng::substream(seed, static_cast<uint64_t>(j));
    Cx z = g.sample_point(rng);
    double d0 = disk_dist(Cx(0, 0), z);
    double lim = 2.0 * R + 2.0 * d0;
    bool hit = false;
    for (const BallElement& e : ball.elements) {
      if (e.disp > lim + 1e-9) break;
      if (!cond.matches(e.chi)) continue;
      if (disk_dist(z, e.m.apply_disk(z)) <= 2.0 * R) {
        hit = true;
        break;
      }
    }
    if (hit) {
      ++out.hits;
    } else if (lim > trusted) {
      ++uncovered;  // a miss the ball cannot vouch for
    }
  }
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.ci_halfwidth = binomial_ci_halfwidth(out.estimate, static_cast<uint64_t>(samples));
  out.saturated = ball.saturated && uncovered == 0;
  return out;
}

EquivalenceSample equivalence_check(const GroupBall& ball, const OctagonGroup& g,
                                    const ChiCondition& cond, Cx z, double R, double band) {
  if (R <= 0 || band < 0) throw ConfigError("equivalence_check: need R > 0, band >= 0");
  EquivalenceSample out;
  const double d0 = disk_dist(Cx(0, 0), z);
  const double trusted = ball.cutoff - g.diameter();
  // every candidate for d(z, gamma z) <= 2R (even 2R + 2 band) is in the ball
  const bool covered =
      ball.saturated && 2.0 * R + 2.0 * band + 2.0 * d0 <= trusted;

  // side A: threshold the injectivity radius (minimum-based path)
  InjRad ir = inj_rad(ball, g, cond, z);
  out.side_a = ir.found && ir.value <= R;
  bool ind_a = (ir.found && std::abs(ir.value - R) <= band) || (!out.side_a && !covered);

  // side B: direct existence scan, widest displacements first
  double lim = 2.0 * R + 2.0 * band + 2.0 * d0 + 1e-9;
  size_t hi = static_cast<size_t>(
      std::partition_point(ball.elements.begin(), ball.elements.end(),
                           [&](const BallElement& e) { return e.disp <= lim; }) -
      ball.elements.begin());
  bool exists = false;
  double closest = kInf;
  for (size_t i = hi; i-- > 0;) {
    const BallElement& e = ball.elements[i];
    if (!cond.matches(e.chi)) continue;
    double d = disk_dist(z, e.m.apply_disk(z));
    if (d <= 2.0 * R) exists = true;
    closest = std::min(closest, std::abs(d - 2.0 * R));
  }
  out.side_b = exists;
  bool ind_b = closest <= 2.0 * band || (!exists && !covered);
  out.indeterminate = ind_a || ind_b;
  return out;
}

McEquivalence mc_equivalence(const OctagonGroup& g, const GroupBall& ball,
                             const ChiCondition& cond, double R, long long samples,
                             unsigned long long seed, double band) {
  if (samples <= 0) throw ConfigError("sample count must be positive");
  McEquivalence out;
  out.samples = samples;
  out.saturated = ball.saturated;
  long long a_hits = 0, b_hits = 0, indet = 0, agreed = 0;
  for (long long j = 0; j < samples; ++j) {
    Rng rng = Rng::substream(seed, static_cast<uint64_t>(j));
    Cx z = g.sample_point(rng);
    EquivalenceSample es = equivalence_check(ball, g, cond, z, R, band);
    a_hits += es.side_a;
    b_hits += es.side_b;
    if (es.indeterminate) {
      ++indet;
    } else if (es.side_a == es.side_b) {
      ++agreed;
    } else {
      ++out.disagreements;
    }
  }
  out.prob_a = static_cast<double>(a_hits) / static_cast<double>(samples);
  out.prob_b = static_cast<double>(b_hits) / static_cast<double>(samples);
  out.ci_a = binomial_ci_halfwidth(out.prob_a, static_cast<uint64_t>(samples));
  out.ci_b = binomial_ci_halfwidth(out.prob_b, static_cast<uint64_t>(samples));
  long long decided = samples - indet;
  out.agree_fraction =
      decided > 0 ? static_cast<double>(agreed) / static_cast<double>(decided) : 1.0;
  out.indet_fraction = static_cast<double>(indet) / static_cast<double>(samples);
  return out;
}

}  // namespace bslab
