#include "bslab/zcover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "bslab/errors.hpp"

namespace bslab {
namespace {

// circumscribed ball of the support box, as in the geometric sums
Rat support_ball_r2(const TestFunction& f) {
  Rat r2 = rat_of(0, 1);
  for (int i = 0; i < f.dimension(); ++i) {
    Rat h = f.support_halfwidth(i);
    r2 += h * h;
  }
  return r2;
}

void require_dim(const ZCoverScheme& s, const TestFunction& f) {
  if (f.dimension() != s.basis().dim()) {
    throw ConfigError("test function dimension does not match the scheme");
  }
}

}  // namespace

ZCoverScheme::ZCoverScheme(LatticeBasis basis, std::vector<long long> chi)
    : basis_(std::move(basis)), chi_(std::move(chi)) {
  const int d = basis_.dim();
  if (static_cast<int>(chi_.size()) != d) {
    throw ConfigError("chi length must equal the lattice dimension");
  }
  long long g = 0;
  for (long long c : chi_) g = std::gcd(g, c);
  if (g != 1) {
    throw ConfigError("chi must be primitive (gcd of coefficients 1) to be surjective");
  }

  // v = (B^{-1})^T chi, exact
  RatMat dual = basis_.dual().matrix();
  RatVec chi_rat(d);
  for (int i = 0; i < d; ++i) chi_rat[i] = rat_of(chi_[i], 1);
  v_ = mat_vec(dual, chi_rat);

  // integer kernel of chi via a unimodular column transform, mapped through B
  IntVec row(d);
  for (int i = 0; i < d; ++i) row[i] = big_of(chi_[i]);
  IntMat U = row_gcd_transform(row);
  RatMat K(d, d - 1);
  for (int i = 0; i < d; ++i) {
    for (int j = 1; j < d; ++j) K.at(i, j - 1) = Rat(U.at(i, j));
  }
  kernel_ = mat_mul(basis_.matrix(), K);

  // <v, B e_j> == chi_j exactly, by construction; check anyway
  for (int j = 0; j < d; ++j) {
    Rat dot = rat_of(0, 1);
    for (int i = 0; i < d; ++i) dot += v_[i] * basis_.matrix().at(i, j);
    if (dot != chi_rat[j]) {
      throw InvariantViolation("dual shift vector fails <v, gamma> = chi(gamma)");
    }
  }
}

long long ZCoverScheme::chi_of_coeffs(const std::vector<long long>& k) const {
  if (k.size() != chi_.size()) throw ConfigError("coefficient vector has wrong length");
  long long s = 0;
  for (size_t i = 0; i < k.size(); ++i) s += chi_[i] * k[i];
  return s;
}

std::complex<double> TwistedTrace::value(double theta) const {
  std::complex<double> acc(0, 0);
  for (const auto& [m, c] : coeffs) {
    double phase = 2.0 * std::numbers::pi * theta * static_cast<double>(m);
    acc += to_double(c) * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

Rat TwistedTrace::fiber_sum_multiples(long long n, bool include_zero_fiber) const {
  if (n <= 0) throw ConfigError("fiber multiple must be positive");
  Rat acc = rat_of(0, 1);
  for (const auto& [m, c] : coeffs) {
    if (m == 0 && !include_zero_fiber) continue;
    if (m % n == 0) acc += c;
  }
  return acc;
}

TwistedTrace twisted_geometric(const ZCoverScheme& scheme, const TestFunction& f,
                               long long budget) {
  require_dim(scheme, f);
  TwistedTrace out;
  out.covol = scheme.basis().covolume();
  auto points = enumerate_points(scheme.basis().matrix(), support_ball_r2(f), true, budget);
  for (const auto& p : points) {
    Rat fv = f.eval_exact(p.vec);
    if (fv == 0) continue;
    out.coeffs[scheme.chi_of_coeffs(p.coeffs)] += out.covol * fv;
  }
  for (auto it = out.coeffs.begin(); it != out.coeffs.end();) {
    it = it->second == 0 ? out.coeffs.erase(it) : std::next(it);
  }
  out.degree = 0;
  out.symmetric = true;
  for (const auto& [m, c] : out.coeffs) {
    out.degree = std::max(out.degree, std::abs(m));
    auto mirror = out.coeffs.find(-m);
    if (mirror == out.coeffs.end() || mirror->second != c) out.symmetric = false;
  }
  return out;
}

EngineResult twisted_spectral(const ZCoverScheme& scheme, const Rat& theta,
                              const TestFunction& f, double tail_tol, long long budget) {
  require_dim(scheme, f);
  if (tail_tol <= 0) throw ConfigError("tail_tol must be positive");
  const RatMat P = scheme.basis().dual().matrix();
  RatVec shift(scheme.dual_shift());
  for (Rat& s : shift) s *= theta;
  return affine_dual_sum(f, P, shift, tail_tol, budget);
}

Rat l2_trace(const ZCoverScheme& scheme, const TestFunction& f, long long budget) {
  require_dim(scheme, f);
  const RatMat& K = scheme.kernel_basis();
  RatVec zero(scheme.basis().dim(), rat_of(0, 1));
  Rat acc = f.eval_exact(zero);
  if (K.cols() == 0) return acc;  // d = 1: the kernel is trivial
  auto points = enumerate_points(K, support_ball_r2(f), false, budget);
  for (const auto& p : points) acc += f.eval_exact(p.vec);
  return acc;
}

IndependenceReport trace_independence_check(const ZCoverScheme& scheme, const TestFunction& f,
                                            const std::vector<long long>& n_values) {
  if (n_values.empty()) throw ConfigError("need at least one n");
  IndependenceReport rep;
  rep.n_values = n_values;
  rep.l2 = l2_trace(scheme, f);

  // kernel points listed once; each n re-assembles the trace with its own
  // volume bookkeeping: class volume vol_n cancels 1/vol_n only at the end
  const RatMat& K = scheme.kernel_basis();
  std::vector<Rat> kernel_values;
  RatVec zero(scheme.basis().dim(), rat_of(0, 1));
  kernel_values.push_back(f.eval_exact(zero));
  if (K.cols() > 0) {
    for (const auto& p : enumerate_points(K, support_ball_r2(f), false)) {
      Rat fv = f.eval_exact(p.vec);
      if (fv != 0) kernel_values.push_back(fv);
    }
  }
  const Rat covol = scheme.basis().covolume();
  rep.all_equal = true;
  for (long long n : n_values) {
    if (n <= 0) throw ConfigError("member index n must be positive");
    Rat vol_n = rat_of(n, 1) * covol;
    Rat numerator = rat_of(0, 1);
    for (const Rat& fv : kernel_values) numerator += vol_n * fv;
    Rat trace = numerator / vol_n;
    if (trace != rep.l2) rep.all_equal = false;
    rep.traces.push_back(trace);
  }
  return rep;
}

DefectReport kernel_defect_check(const ZCoverScheme& scheme, const TestFunction& f,
                                 const std::vector<long long>& n_values) {
  DefectReport rep;
  rep.n_values = n_values;
  TwistedTrace tw = twisted_geometric(scheme, f);
  const Rat covol = scheme.basis().covolume();
  rep.chi_max = tw.degree;
  rep.zero_from = tw.degree + 1;
  rep.full_sum = tw.fiber_sum_multiples(1) / covol;
  rep.kernel_sum = (tw.fiber_sum_multiples(1) - tw.fiber_sum_multiples(1, false)) / covol;
  // cross-check against the independent kernel-lattice route
  Rat l2 = l2_trace(scheme, f);
  if (rep.kernel_sum != l2) {
    throw InvariantViolation("fiber bookkeeping disagrees with the kernel-lattice sum");
  }
  for (long long n : n_values) {
    if (n <= 0) throw ConfigError("member index n must be positive");
    rep.defects.push_back(tw.fiber_sum_multiples(n, false) / covol);
  }
  return rep;
}

QuadratureReport circle_quadrature_check(const ZCoverScheme& scheme, const TestFunction& f,
                                         long long m) {
  TwistedTrace tw = twisted_geometric(scheme, f);
  if (m <= 2 * tw.degree) {
    throw ConfigError("quadrature size must exceed twice the trace degree");
  }
  QuadratureReport rep;
  rep.degree = tw.degree;
  rep.m = m;
  const Rat covol = scheme.basis().covolume();
  rep.l2 = l2_trace(scheme, f);
  // exact path: averaging over m-th roots keeps exactly the fibers m | mu
  rep.exact_quadrature = tw.fiber_sum_multiples(m) / covol;
  rep.exact_match = rep.exact_quadrature == rep.l2;
  // float path: plain average of the evaluated trace
  double acc = 0;
  for (long long j = 0; j < m; ++j) {
    acc += tw.value(static_cast<double>(j) / static_cast<double>(m)).real();
  }
  rep.quadrature = acc / static_cast<double>(m) / to_double(covol);
  rep.float_err = std::abs(rep.quadrature - to_double(rep.l2));
  return rep;
}

MeasureReport spectral_measure_integral(const ZCoverScheme& scheme, const TestFunction& f,
                                        long long m, double tail_tol, long long budget) {
  TwistedTrace tw = twisted_geometric(scheme, f);
  if (m <= 2 * tw.degree) {
    throw ConfigError("quadrature size must exceed twice the trace degree");
  }
  if (tail_tol <= 0) throw ConfigError("tail_tol must be positive");
  MeasureReport rep;
  rep.m = m;
  const double covol = to_double(scheme.basis().covolume());
  double acc = 0, err = 0;
  for (long long j = 0; j < m; ++j) {
    EngineResult r = twisted_spectral(scheme, rat_of(j, m), f, tail_tol * covol, budget);
    acc += r.value;
    err += r.err_bound;
    rep.points += r.points;
  }
  rep.value = acc / static_cast<double>(m) / covol;
  rep.err_bound = err / static_cast<double>(m) / covol + 1e-15 * (1.0 + std::abs(rep.value));
  return rep;
}

}  // namespace bslab
