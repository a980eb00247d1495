#pragma once

#include <string>
#include <vector>

#include "bslab/lattice.hpp"
#include "bslab/spectral.hpp"
#include "bslab/testfn.hpp"

namespace bslab {

// Exact sum of f over the lattice points of B (optionally excluding 0). The
// sum is finite because f has compact support; enumeration covers the support
// radius exactly.
Rat geometric_sum(const LatticeBasis& basis, const TestFunction& f,
                  bool exclude_zero = false, long long budget = 10000000);

struct SpectralSum {
  double value = 0;       // covol^{-1} * sum of f^ over the dual lattice
  double err_bound = 0;   // certified: |value - true| <= err_bound
  long long points = 0;   // dual points enumerated (0 for closed forms)
  std::string method;
};

// Dual-side sum covol(L)^{-1} * sum_{xi in L*} f^(xi), certified to tail_tol.
// Throws BudgetExceeded if the certificate cannot reach tail_tol in budget.
SpectralSum spectral_sum(const LatticeBasis& basis, const TestFunction& f,
                         double tail_tol, long long budget = 20000000);

struct PlancherelDefect {
  Rat geometric;        // sum_{gamma != 0} f(gamma), exact
  double spectral = 0;  // |spectral_sum - f(0)|
  double spectral_err = 0;
  bool agree = false;   // routes agree within the certified error
};

// Defect of the normalized trace against the point mass at 0; zero exactly
// when no nonzero lattice point meets supp f.
PlancherelDefect plancherel_defect(const LatticeBasis& basis, const TestFunction& f,
                                   double tail_tol = 1e-10);

struct ScanRow {
  long long n = 0;
  Rat covol;
  Rat systole2;                    // squared shortest-vector norm, exact
  double systole = 0;              // sqrt of the above
  std::vector<long long> counts;   // #(L\{0} in ball_R), one per radius
  std::vector<Rat> defects;        // exact geometric defects, one per f
  double poisson_resid = 0;        // max_f |geometric_sum - spectral_sum|
};

struct ScanResult {
  std::vector<ScanRow> rows;
  double tail_tol = 0;
};

// Evaluates counts, defects and the two-sided trace identity along a family.
// Rows are indexed by n in [n_begin, n_end]; deterministic regardless of the
// number of worker threads.
ScanResult scan_family(const LatticeFamily& family, const std::vector<TestFunction>& fs,
                       const std::vector<Rat>& radii, long long n_begin, long long n_end,
                       double tail_tol, int threads = 1);

}  // namespace bslab
