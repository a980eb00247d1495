#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bslab/rational.hpp"

namespace bslab {

struct LatticePoint {
  std::vector<long long> coeffs;  // integer coordinates w.r.t. the basis
  RatVec vec;                     // basis * coeffs
  Rat norm2;                      // exact squared Euclidean norm
};

// Full-rank rational basis; columns generate the lattice B * Z^d.
class LatticeBasis {
 public:
  explicit LatticeBasis(RatMat B);

  int dim() const { return B_.rows(); }
  const RatMat& matrix() const { return B_; }

  Rat covolume() const;          // |det B| > 0
  LatticeBasis dual() const;     // (B^{-1})^T; dual().dual() == same lattice
  bool same_lattice(const LatticeBasis& other) const;

  RatVec apply(const std::vector<long long>& coeffs) const;

 private:
  RatMat B_;
};

// All m in Z^V with ||A m||^2 <= R2, for a d x V rational matrix A of full
// column rank. Exact (rational Fincke-Pohst); results sorted lexicographically
// by coefficient vector. Throws BudgetExceeded if more than `budget` search
// nodes are visited.
std::vector<std::vector<long long>> enumerate_coeffs(const RatMat& A, const Rat& R2,
                                                     long long budget = 10000000);

// Convenience: materialized points of the lattice A*Z^V with norm <= R.
std::vector<LatticePoint> enumerate_points(const RatMat& A, const Rat& R2,
                                           bool include_zero = true,
                                           long long budget = 10000000);

// Nonzero lattice vector of minimal norm; ties broken lexicographically on the
// integer coefficient vector.
LatticePoint shortest_vector(const LatticeBasis& basis, long long budget = 10000000);

// A one-parameter family of lattices.
struct LatticeFamily {
  std::string kind;
  std::function<LatticeBasis(long long)> member;
};

// diag(n^2, 1/n) * Z^2: covolume n -> infinity, yet dual points accumulate.
LatticeFamily family_stretch_squeeze();
// n * L0: both shortest vector and covolume diverge.
LatticeFamily family_dilation(const LatticeBasis& L0);
// B0 * diag(n, 1, ..., 1): index-n sublattice chain of B0 * Z^d.
LatticeFamily family_index_chain(const LatticeBasis& L0);

}  // namespace bslab
