#pragma once

#include <string>

#include "bslab/lattice.hpp"
#include "bslab/rational.hpp"
#include "bslab/testfn.hpp"

namespace bslab {

struct EngineResult {
  double value = 0;       // computed sum
  double err_bound = 0;   // certified bound on |value - exact sum|
  long long points = 0;   // lattice points enumerated on generic paths
  std::string method;     // reduction trace, e.g. "kill,split(2):closed|closed"
};

// Sum over all m in Z^D of  prod_i  a_i sinc(pi a_i (shift_i + (P m)_i))^k,
// i.e. fhat evaluated over the affine coset shift + P * Z^D.  P must be square
// (D = f.dimension()) and nonsingular; shift and P rational so all structure
// tests (sinc zero patterns, residue classes) are exact.
//
// Strategy, applied recursively:
//   1. axis elimination: when a_i * (row i of P) is integral and a_i*shift_i is
//      an integer, every point off the hyperplane xi_i = 0 lands on a sinc
//      zero; the sum restricts to an integer solution set of one lower rank
//      (or vanishes when no solution exists).
//   2. column Hermite normal form + connected components split the sum into a
//      product of independent lower-dimensional sums.
//   3. rank-1 pieces are evaluated in closed form: residue classes modulo the
//      period reduce each piece to Hurwitz zeta values (certified remainder).
//   4. irreducible pieces of rank >= 2 are enumerated (floating Fincke-Pohst
//      with outward-rounded bounds) plus a certified integral-comparison tail
//      bound; fails with BudgetExceeded if tail_tol is unreachable in budget.
EngineResult affine_dual_sum(const TestFunction& f, const RatMat& P, const RatVec& shift,
                             double tail_tol, long long budget = 20000000);

}  // namespace bslab
