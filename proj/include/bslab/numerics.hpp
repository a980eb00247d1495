#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace bslab {

// Neumaier compensated accumulator; keeps absolute error near machine epsilon
// even over millions of terms.
class KahanSum {
 public:
  void add(double x) {
    double t = s_ + x;
    if (std::abs(s_) >= std::abs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0, c_ = 0.0;
};

// sin(pi t)/(pi t), exact 1 at t = 0, series near the removable singularity.
inline double sinc_pi(double t) {
  double u = M_PI * t;
  if (std::abs(u) < 1e-4) {
    double u2 = u * u;
    return 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0);
  }
  return std::sin(u) / u;
}

// integer power by squaring
inline double ipow(double b, int k) {
  double r = 1.0;
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

struct ZetaResult {
  double value;
  double err_bound;  // rigorous bound on |value - exact|, excluding final rounding
};

// Hurwitz zeta(s, x) = sum_{j>=0} (x+j)^{-s} for integer s >= 2, x > 0.
// Euler-Maclaurin with the shift chosen large enough that the omitted-term
// bound applies; relative accuracy ~1e-15, reported in err_bound.
ZetaResult hurwitz_zeta(int s, double x);

// 95% normal-approximation half-width for a binomial proportion estimate.
inline double binomial_ci_halfwidth(double phat, uint64_t n) {
  if (n == 0) return 1.0;
  double v = phat * (1.0 - phat) / static_cast<double>(n);
  return 1.959963984540054 * std::sqrt(v > 0 ? v : 0);
}

}  // namespace bslab
