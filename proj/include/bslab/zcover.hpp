#pragma once

#include <complex>
#include <map>
#include <vector>

#include "bslab/lattice.hpp"
#include "bslab/spectral.hpp"
#include "bslab/testfn.hpp"

namespace bslab {

// Z-cover scheme in the abelian model: a primitive integer functional chi on
// the coefficient group Z^d of Gamma = B*Z^d defines the tower
//   Gamma_n = chi^{-1}(nZ)   (index n, covolume n*covol(Gamma)),
//   Gamma_inf = ker chi      (rank d-1: not a lattice in R^d).
// The dual shift vector v = (B^{-1})^T chi satisfies <v, gamma> = chi(gamma)
// exactly, so the character gamma -> e^{2 pi i theta chi(gamma)} is the
// restriction of the unitary character x -> e^{2 pi i theta <v,x>}.
class ZCoverScheme {
 public:
  ZCoverScheme(LatticeBasis basis, std::vector<long long> chi);

  const LatticeBasis& basis() const { return basis_; }
  const std::vector<long long>& chi() const { return chi_; }
  const RatVec& dual_shift() const { return v_; }
  // d x (d-1) rational matrix whose columns span Gamma_inf (empty for d = 1)
  const RatMat& kernel_basis() const { return kernel_; }

  long long chi_of_coeffs(const std::vector<long long>& k) const;

 private:
  LatticeBasis basis_;
  std::vector<long long> chi_;
  RatVec v_;
  RatMat kernel_;
};

// Exact Laurent data of the twisted orbital sum
//   theta -> covol(Gamma) * sum_{gamma} e^{2 pi i theta chi(gamma)} f(gamma):
// coefficient c_m collects covol * f over the fiber chi = m.
struct TwistedTrace {
  std::map<long long, Rat> coeffs;  // only nonzero entries
  long long degree = 0;             // max |m| over nonzero coefficients
  bool symmetric = false;           // c_m == c_{-m} for all m (real trace)
  Rat covol;

  std::complex<double> value(double theta) const;
  // exact sum of c_m over m in nZ (n >= 1); the full sum for n = 1
  Rat fiber_sum_multiples(long long n, bool include_zero_fiber = true) const;
};

TwistedTrace twisted_geometric(const ZCoverScheme& scheme, const TestFunction& f,
                               long long budget = 10000000);

// Twisted dual-coset sum  sum_{xi in theta*v + Gamma*} fhat(xi), certified to
// tail_tol; by twisted Poisson summation it equals the twisted geometric value
// (real for the even built-in test functions).
EngineResult twisted_spectral(const ZCoverScheme& scheme, const Rat& theta,
                              const TestFunction& f, double tail_tol,
                              long long budget = 20000000);

// Relative L^2-trace: exact sum of f over Gamma_inf (kernel lattice route,
// independent of twisted_geometric's fiber bookkeeping).
Rat l2_trace(const ZCoverScheme& scheme, const TestFunction& f, long long budget = 10000000);

// The relative trace assembled per member Gamma_n with the volume factors
// written out: (1/vol_n) * sum_{gamma in Gamma_inf} vol_n * f(gamma). The
// value must not depend on n.
struct IndependenceReport {
  std::vector<long long> n_values;
  std::vector<Rat> traces;
  Rat l2;
  bool all_equal = false;
};
IndependenceReport trace_independence_check(const ZCoverScheme& scheme, const TestFunction& f,
                                            const std::vector<long long>& n_values);

// Defect Delta_n = sum_{Gamma_n} f - sum_{Gamma_inf} f, exact. Vanishes once
// n exceeds every |chi| met on the support of f.
struct DefectReport {
  std::vector<long long> n_values;
  std::vector<Rat> defects;
  long long chi_max = 0;    // max |chi(gamma)| over f(gamma) != 0
  long long zero_from = 1;  // defects are exactly 0 for n >= zero_from
  Rat full_sum;             // sum over Gamma (the n = 1 member)
  Rat kernel_sum;           // sum over Gamma_inf
};
DefectReport kernel_defect_check(const ZCoverScheme& scheme, const TestFunction& f,
                                 const std::vector<long long>& n_values);

// Equal-weight quadrature of the normalized twisted trace over the circle at
// the m-th roots of unity. The trace is a Laurent polynomial of the recorded
// degree, so the quadrature is exact as soon as m exceeds it; m must exceed
// twice the degree (stated precondition, conservative by a factor of two).
struct QuadratureReport {
  long long degree = 0;
  long long m = 0;
  double quadrature = 0;  // float evaluation through TwistedTrace::value
  Rat exact_quadrature;   // coefficient-filter path, exact
  Rat l2;
  bool exact_match = false;  // exact_quadrature == l2
  double float_err = 0;      // |quadrature - l2|
};
QuadratureReport circle_quadrature_check(const ZCoverScheme& scheme, const TestFunction& f,
                                         long long m);

// Independent route to the same integral: quadrature of the twisted
// dual-coset sums (spectral side), normalized by covol. Certified error.
struct MeasureReport {
  double value = 0;
  double err_bound = 0;
  long long m = 0;
  long long points = 0;  // dual points enumerated across the grid
};
MeasureReport spectral_measure_integral(const ZCoverScheme& scheme, const TestFunction& f,
                                        long long m, double tail_tol,
                                        long long budget = 20000000);

}  // namespace bslab
