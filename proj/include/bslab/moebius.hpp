#pragma once

#include <complex>
#include <string>

namespace bslab {

using Cx = std::complex<double>;

// Real 2x2 matrix of determinant 1, identified with its negative (an isometry
// of the hyperbolic plane). Products renormalize the determinant; drift beyond
// 1e-12 before renormalization would signal broken inputs.
struct MoebiusMatrix {
  double a = 1, b = 0, c = 0, d = 1;

  static MoebiusMatrix identity() { return {}; }

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  MoebiusMatrix inverse() const { return {d, -b, -c, a}; }

  // Frobenius distance min(|A-B|, |A+B|): the metric on sign classes.
  double dist_mod_sign(const MoebiusMatrix& o) const;
  bool equal_mod_sign(const MoebiusMatrix& o, double tol = 1e-9) const {
    return dist_mod_sign(o) <= tol;
  }

  // Action on the upper half plane by fractions (az+b)/(cz+d).
  Cx apply_halfplane(Cx z) const;
  // Action on the unit disk through the Cayley transform.
  Cx apply_disk(Cx w) const;
};

// Product with determinant renormalization.
MoebiusMatrix mul(const MoebiusMatrix& A, const MoebiusMatrix& B);

// Distance on the upper half plane: arccosh(1 + |z-w|^2 / (2 Im z Im w)).
double hyp_dist(Cx z, Cx w);
// Distance on the unit disk: arccosh(1 + 2|z-w|^2 / ((1-|z|^2)(1-|w|^2))).
double disk_dist(Cx z, Cx w);

enum class MoebiusKind { kElliptic, kParabolic, kHyperbolic };

// Classification by |trace| against 2, with a +-tol band mapped to parabolic.
MoebiusKind classify(const MoebiusMatrix& M, double tol = 1e-9);

// Geodesic translation length 2*arccosh(|tr|/2); rejects non-hyperbolic input.
double translation_length(const MoebiusMatrix& M, double tol = 1e-9);

}  // namespace bslab
