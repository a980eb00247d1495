#pragma once

#include <vector>

#include "bslab/rational.hpp"

namespace bslab {

// Centered cardinal B-spline beta_k: k-fold convolution of the indicator of
// [-1/2, 1/2]. Support [-k/2, k/2]; smoothness C^{k-2}; beta_k >= 0.
// Exact value at rational x via the divided-difference formula
//   beta_k(x) = 1/(k-1)! * sum_{j=0..k} (-1)^j C(k,j) (x + k/2 - j)_+^{k-1}.
Rat bspline_exact(int k, const Rat& x);
double bspline(int k, double x);

// Tensor product of scaled B-splines:
//   f(x) = prod_i beta_k(x_i / a_i),  a_i > 0 rational.
// Fourier transform (convention  fhat(xi) = int f(x) e^{-2 pi i <xi,x>} dx):
//   fhat(xi) = prod_i a_i * sinc(pi a_i xi_i)^k,   fhat(0) = prod_i a_i.
class TestFunction {
 public:
  TestFunction(int k, RatVec scales);

  int order() const { return k_; }
  int dimension() const { return static_cast<int>(scales_.size()); }
  const RatVec& scales() const { return scales_; }
  const std::vector<double>& scales_dbl() const { return scales_dbl_; }

  // Exact evaluation at a rational point (dimension must match).
  Rat eval_exact(const RatVec& x) const;
  double eval(const std::vector<double>& x) const;

  // Fourier transform at a real frequency vector; removable singularities at
  // xi_i = 0 give the factor a_i exactly.
  double eval_ft(const std::vector<double>& xi) const;
  // Single-axis transform factor a_i * sinc(pi a_i t)^k.
  double eval_ft_axis(int i, double t) const;

  // Half-width of the support box along axis i: k * a_i / 2 (exact).
  Rat support_halfwidth(int i) const;
  // Euclidean radius of a ball containing the support box.
  double support_radius() const;

  // f(0) = beta_k(0)^d, exact.
  Rat value_at_zero() const;

  // Certified bound on the sum of |fhat_axis(i, t)| over any set of reals t
  // that (a) all satisfy |t| >= M and (b) are pairwise separated by at least
  // `spacing`. Derived from |sinc(pi a t)^k| <= (pi a |t|)^{-k} and an
  // integral comparison; requires M > 0. Decays like M^{1-k}.
  double ft_axis_tail_bound(int i, double M, double spacing) const;
  // Pointwise envelope: |eval_ft_axis(i, t)| <= this for all |t| >= M.
  double ft_axis_sup_bound(int i, double M) const;

 private:
  int k_;
  RatVec scales_;
  std::vector<double> scales_dbl_;
};

}  // namespace bslab
