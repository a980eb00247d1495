#pragma once

#include <array>
#include <string>
#include <vector>

#include "bslab/moebius.hpp"
#include "bslab/rng.hpp"
#include "bslab/words.hpp"

namespace bslab {

// Cocompact genus-2 lattice in PSL2(R): side-pairing translations of the
// regular hyperbolic octagon with vertex angle pi/4, centered at the origin
// of the disk model.
//
// The octagon's natural side pairings are four translations t_0..t_3 (t_k
// translates by the systole along the diameter at angle k*pi/4) satisfying
// the 8-letter relation t0 t1^-1 t2 t3^-1 t0^-1 t1 t2^-1 t3 = 1. The marked
// generators
//   x1 = t0,  x2 = t1^-1,  x3 = t1^-1 t0 t2,  x4 = t3^-1 t2
// are free-word equivalent to that relation in commutator form
// [x1,x2][x3,x4] = 1, which is validated numerically at build time. The
// exponent functional chi(x1)=1, chi(x2)=chi(x3)=chi(x4)=0 expressed in
// t-exponents (n0, n1, n2, n3) is n0 - n2 - n3.
class OctagonGroup {
 public:
  static OctagonGroup build();

  // generators as in the commutator presentation
  const std::array<MoebiusMatrix, 4>& marked_generators() const { return x_; }
  // side-pairing translations used for ball search and domain reduction
  const std::array<MoebiusMatrix, 4>& translations() const { return t_; }

  double systole() const { return ell_; }        // translation length of each t_k
  double vertex_radius() const { return rv_; }   // hyperbolic circumradius
  double diameter() const { return 2.0 * rv_; }  // of the closed octagon
  double area() const { return area_; }          // from computed vertex angles
  double relator_residual() const { return relator_resid_; }
  double commutator_residual() const { return commutator_resid_; }

  // chi of a word in t-letters (letter +-(k+1) refers to t_k)
  long long chi_t_word(const Word& w) const;
  static long long chi_t_letter(int letter);

  bool in_octagon(Cx z, double slack = 0.0) const;
  // hyperbolic distance from z to the nearest of the 8 side geodesics
  double dist_to_boundary(Cx z) const;

  // Pulls z into the closed octagon by repeatedly applying whichever t_k^{+-1}
  // most decreases the distance to the origin. Returns the reduced point and
  // the t-word g (as letters) with g applied to z giving the reduced point.
  struct Reduced {
    Cx point;
    Word applied;
  };
  Reduced dirichlet_reduce(Cx z, int max_steps = 400) const;

  // Area-uniform sample inside the open octagon (polar inverse-CDF in the
  // circumscribed disk plus rejection; acceptance ratio ~ 0.41).
  Cx sample_point(Rng& rng) const;

  MoebiusMatrix t_letter(int letter) const;  // letter in {+-1..+-4}
  MoebiusMatrix word_matrix(const Word& w) const;

 private:
  OctagonGroup() = default;

  std::array<MoebiusMatrix, 4> t_;
  std::array<MoebiusMatrix, 4> x_;
  std::array<Cx, 8> side_centers_;
  double side_center_abs_ = 0, side_radius_ = 0;
  double ell_ = 0, rv_ = 0, area_ = 0;
  double relator_resid_ = 0, commutator_resid_ = 0;
};

struct BallElement {
  Word tword;       // word in t-letters reaching the element
  MoebiusMatrix m;
  double disp = 0;  // d(0, m*0)
  long long chi = 0;
};

// All nontrivial group elements with displacement <= cutoff + margin,
// breadth-first over the 8 t-letters, deduplicated up to sign (numerical
// copies of one element agree to ~1e-8 Frobenius, distinct elements differ
// by >~1e-1; the 1e-6 confirm threshold is guarded against both scales),
// closed under inverse, sorted by displacement. `saturated`
// certifies that after closure a further full expansion round added nothing
// with displacement under the cutoff; completeness below cutoff - diameter
// rests on that certificate (fundamental-domain corridor heuristic), which is
// why consumers must respect the cutoff metadata.
struct GroupBall {
  std::vector<BallElement> elements;
  double cutoff = 0;
  double margin = 0;
  bool saturated = false;
  int rounds = 0;
};

GroupBall group_ball(const OctagonGroup& g, double cutoff, double margin = 0.05,
                     long long budget = 400000);

// Filter for the subgroup chain Gamma_n = chi^{-1}(nZ) and its limit
// Gamma_inf = ker chi.
struct ChiCondition {
  long long n = 1;
  bool kernel = false;
  bool matches(long long chi) const { return kernel ? chi == 0 : chi % n == 0; }
};

struct InjRad {
  double value = 0;     // 1/2 * min displacement over matching elements
  bool certified = false;  // min lies in the ball's completeness region
  bool found = false;   // false: no matching element; value is a lower bound
};

// Injectivity radius of the quotient by the filtered subgroup at z (the group
// is torsion-free, so it is half the minimal displacement).
InjRad inj_rad(const GroupBall& ball, const OctagonGroup& g, const ChiCondition& cond, Cx z);

struct BsEstimate {
  double estimate = 0;
  double ci_halfwidth = 0;  // binomial 95%
  long long samples = 0;
  long long hits = 0;
  bool saturated = false;
  double cutoff = 0;
};

// Monte Carlo estimate of the area fraction of the quotient with injectivity
// radius <= R. Sample j always uses rng substream (seed, j): estimates are
// reproducible and independent of any parallel scheduling.
BsEstimate mc_bs_probability(const OctagonGroup& g, const GroupBall& ball,
                             const ChiCondition& cond, double R, long long samples,
                             unsigned long long seed);

struct EquivalenceSample {
  bool side_a = false;       // inj_rad(z) <= R
  bool side_b = false;       // exists gamma != 1 in subgroup with d(z, gamma z) <= 2R
  bool indeterminate = false;  // within 1e-6 of the threshold; excluded from stats
};

// Pointwise check that the injectivity-radius form and the displacement form
// of the ball-meeting criterion agree; the two sides are evaluated by
// independent code paths.
EquivalenceSample equivalence_check(const GroupBall& ball, const OctagonGroup& g,
                                    const ChiCondition& cond, Cx z, double R,
                                    double band = 1e-6);

struct McEquivalence {
  double prob_a = 0;  // fraction with inj_rad <= R
  double prob_b = 0;  // fraction with a short displacement
  double ci_a = 0;    // binomial 95% halfwidths
  double ci_b = 0;
  double agree_fraction = 1;  // among the non-indeterminate samples
  double indet_fraction = 0;
  long long samples = 0;
  long long disagreements = 0;
  bool saturated = false;
};

// Seeded Monte Carlo sweep of equivalence_check; sample j uses rng substream
// (seed, j), matching mc_bs_probability's points for cross-validation.
McEquivalence mc_equivalence(const OctagonGroup& g, const GroupBall& ball,
                             const ChiCondition& cond, double R, long long samples,
                             unsigned long long seed, double band = 1e-6);

}  // namespace bslab
