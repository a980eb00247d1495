#include "bslab/testfn.hpp"

#include <cmath>

#include "bslab/errors.hpp"
#include "bslab/numerics.hpp"

namespace bslab {

namespace {
constexpr int kMaxOrder = 32;

void check_order(int k) {
  if (k < 2 || k > kMaxOrder)
    throw ConfigError("bspline order must be in [2, 32], got " + std::to_string(k));
}
}  // namespace

Rat bspline_exact(int k, const Rat& x) {
  check_order(k);
  // 1/(k-1)! sum_j (-1)^j C(k,j) (x + k/2 - j)_+^{k-1}
  Rat acc = 0;
  Rat half_k = rat_of(k, 2);
  BigInt binom = 1;  // C(k, j)
  for (int j = 0; j <= k; ++j) {
    Rat t = x + half_k - j;
    if (t > 0) {
      Rat p = 1;
      for (int e = 0; e < k - 1; ++e) p *= t;
      if (j % 2 == 0)
        acc += p * binom;
      else
        acc -= p * binom;
    }
    binom = binom * (k - j) / (j + 1);
  }
  BigInt fact = 1;
  for (int e = 2; e < k; ++e) fact *= e;
  return acc / Rat(fact);
}

double bspline(int k, double x) {
  check_order(k);
  // Stable de Boor pyramid on uniform knots 0..k (all-positive weights; the
  // divided-difference closed form loses ~5 digits at k=8 to cancellation).
  double u = x + k / 2.0;
  if (u <= 0.0 || u >= k) return 0.0;
  int cell = static_cast<int>(std::floor(u));
  if (cell >= k) cell = k - 1;
  std::vector<double> v(k, 0.0);  // v[j] = N_{j,1}(u)
  v[cell] = 1.0;
  for (int m = 2; m <= k; ++m) {
    // N_{j,m}(u) = ((u-j) N_{j,m-1} + (j+m-u) N_{j+1,m-1}) / (m-1)
    for (int j = 0; j + m <= k; ++j)
      v[j] = ((u - j) * v[j] + (j + m - u) * v[j + 1]) / (m - 1);
  }
  return v[0];
}

TestFunction::TestFunction(int k, RatVec scales) : k_(k), scales_(std::move(scales)) {
  check_order(k_);
  if (scales_.empty()) throw ConfigError("test function needs dimension >= 1");
  for (const Rat& a : scales_) {
    if (!(a > 0)) throw ConfigError("test function scales must be positive");
    scales_dbl_.push_back(to_double(a));
  }
}

Rat TestFunction::eval_exact(const RatVec& x) const {
  if (static_cast<int>(x.size()) != dimension())
    throw std::invalid_argument("eval_exact: dimension mismatch");
  Rat prod = 1;
  for (size_t i = 0; i < x.size(); ++i) {
    if (prod == 0) return prod;
    prod *= bspline_exact(k_, x[i] / scales_[i]);
  }
  return prod;
}

double TestFunction::eval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dimension())
    throw std::invalid_argument("eval: dimension mismatch");
  double prod = 1;
  for (size_t i = 0; i < x.size(); ++i) prod *= bspline(k_, x[i] / scales_dbl_[i]);
  return prod;
}

double TestFunction::eval_ft_axis(int i, double t) const {
  return scales_dbl_[i] * ipow(sinc_pi(scales_dbl_[i] * t), k_);
}

double TestFunction::eval_ft(const std::vector<double>& xi) const {
  if (static_cast<int>(xi.size()) != dimension())
    throw std::invalid_argument("eval_ft: dimension mismatch");
  double prod = 1;
  for (size_t i = 0; i < xi.size(); ++i) prod *= eval_ft_axis(static_cast<int>(i), xi[i]);
  return prod;
}

Rat TestFunction::support_halfwidth(int i) const { return scales_[i] * rat_of(k_, 2); }

double TestFunction::support_radius() const {
  double s = 0;
  for (int i = 0; i < dimension(); ++i) {
    double h = to_double(support_halfwidth(i));
    s += h * h;
  }
  return std::sqrt(s);
}

Rat TestFunction::value_at_zero() const {
  Rat b0 = bspline_exact(k_, Rat(0));
  Rat prod = 1;
  for (int i = 0; i < dimension(); ++i) prod *= b0;
  return prod;
}

double TestFunction::ft_axis_tail_bound(int i, double M, double spacing) const {
  if (!(M > 0) || !(spacing > 0))
    throw std::invalid_argument("ft_axis_tail_bound: need M > 0, spacing > 0");
  double a = scales_dbl_[i];
  // |a sinc(pi a t)^k| <= a (pi a |t|)^{-k}; integral comparison over each
  // sign family of points separated by `spacing`.
  double lead = a * ipow(1.0 / (M_PI * a), k_);
  double per_side = lead * (ipow(1.0 / M, k_) +
                            ipow(1.0 / M, k_ - 1) / (spacing * (k_ - 1)));
  return 2.0 * per_side;
}

double TestFunction::ft_axis_sup_bound(int i, double M) const {
  if (!(M > 0)) throw std::invalid_argument("ft_axis_sup_bound: need M > 0");
  double a = scales_dbl_[i];
  double decay = a * ipow(1.0 / (M_PI * a * M), k_);
  return decay < a ? decay : a;
}

}  // namespace bslab
