#include "bslab/euclid.hpp"

#include <cmath>
#include <thread>

#include "bslab/errors.hpp"

namespace bslab {

Rat geometric_sum(const LatticeBasis& basis, const TestFunction& f, bool exclude_zero,
                  long long budget) {
  if (basis.dim() != f.dimension())
    throw ConfigError("geometric_sum: lattice/test-function dimension mismatch");
  // Any point with some |x_i| >= k*a_i/2 evaluates to zero, so enumerating the
  // circumscribed ball of the support box is enough.
  Rat R2(0);
  for (int i = 0; i < f.dimension(); ++i) {
    Rat h = f.support_halfwidth(i);
    R2 += h * h;
  }
  Rat total(0);
  for (const auto& p : enumerate_points(basis.matrix(), R2, /*include_zero=*/!exclude_zero,
                                        budget))
    total += f.eval_exact(p.vec);
  return total;
}

SpectralSum spectral_sum(const LatticeBasis& basis, const TestFunction& f,
                         double tail_tol, long long budget) {
  if (basis.dim() != f.dimension())
    throw ConfigError("spectral_sum: lattice/test-function dimension mismatch");
  if (!(tail_tol > 0)) throw ConfigError("spectral_sum: tail_tol must be positive");
  Rat covol = basis.covolume();
  double cd = to_double(covol);
  // The engine certifies the dual sum to covol * tail_tol, so the normalized
  // value is certified to tail_tol (up to its own float-noise term).
  EngineResult er =
      affine_dual_sum(f, basis.dual().matrix(), RatVec(basis.dim(), Rat(0)),
                      tail_tol * cd, budget);
  SpectralSum s;
  s.value = er.value / cd;
  s.err_bound = er.err_bound / cd + 1e-15 * std::abs(s.value);
  s.points = er.points;
  s.method = er.method;
  if (!(s.err_bound <= tail_tol))
    throw BudgetExceeded("spectral_sum: certified error " + std::to_string(s.err_bound) +
                         " exceeds requested tolerance");
  return s;
}

PlancherelDefect plancherel_defect(const LatticeBasis& basis, const TestFunction& f,
                                   double tail_tol) {
  PlancherelDefect d;
  d.geometric = geometric_sum(basis, f, /*exclude_zero=*/true);
  SpectralSum s = spectral_sum(basis, f, tail_tol);
  double f0 = to_double(f.value_at_zero());
  d.spectral = std::abs(s.value - f0);
  d.spectral_err = s.err_bound + 1e-15 * f0;
  double gd = to_double(d.geometric);
  d.agree = std::abs(gd - d.spectral) <= d.spectral_err + 1e-12 * (1.0 + gd);
  return d;
}

namespace {

ScanRow scan_one(const LatticeFamily& family, const std::vector<TestFunction>& fs,
                 const std::vector<Rat>& radii, long long n, double tail_tol) {
  LatticeBasis B = family.member(n);
  ScanRow row;
  row.n = n;
  row.covol = B.covolume();
  LatticePoint sv = shortest_vector(B);
  row.systole2 = sv.norm2;
  row.systole = std::sqrt(to_double(sv.norm2));
  for (const Rat& R : radii) {
    if (R < 0) throw ConfigError("scan_family: negative radius");
    row.counts.push_back(static_cast<long long>(
        enumerate_points(B.matrix(), R * R, /*include_zero=*/false).size()));
  }
  for (const TestFunction& f : fs) {
    Rat total = geometric_sum(B, f);
    row.defects.push_back(total - f.value_at_zero());
    SpectralSum s = spectral_sum(B, f, tail_tol);
    double resid = std::abs(to_double(total) - s.value);
    row.poisson_resid = std::max(row.poisson_resid, resid);
  }
  return row;
}

}  // namespace

ScanResult scan_family(const LatticeFamily& family, const std::vector<TestFunction>& fs,
                       const std::vector<Rat>& radii, long long n_begin, long long n_end,
                       double tail_tol, int threads) {
  if (n_begin < 1 || n_end < n_begin) throw ConfigError("scan_family: bad n range");
  if (threads < 1) throw ConfigError("scan_family: threads must be >= 1");
  long long count = n_end - n_begin + 1;
  ScanResult out;
  out.tail_tol = tail_tol;
  out.rows.resize(count);

  if (threads == 1 || count == 1) {
    for (long long i = 0; i < count; ++i)
      out.rows[i] = scan_one(family, fs, radii, n_begin + i, tail_tol);
    return out;
  }

  // Static index partition; rows land in their slot so output order (and
  // content) is independent of scheduling.
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  int nw = static_cast<int>(std::min<long long>(threads, count));
  for (int w = 0; w < nw; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (long long i = w; i < count; i += nw)
          out.rows[i] = scan_one(family, fs, radii, n_begin + i, tail_tol);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace bslab
