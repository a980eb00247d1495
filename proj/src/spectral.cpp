#include "bslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "bslab/errors.hpp"
#include "bslab/numerics.hpp"

namespace bslab {

namespace {

// sin(pi t) with exact argument reduction: t is rational, so the distance to
// the nearest integer is exact and the result keeps full relative accuracy
// even when t is very close to an integer.
double sinpi_exact(const Rat& t) {
  BigInt nearest = rat_floor(t + Rat(1, 2));
  Rat r = t - Rat(nearest);  // r in [-1/2, 1/2)
  double s = std::sin(M_PI * to_double(r));
  return mpz_odd_p(nearest.get_mpz_t()) ? -s : s;
}

struct ValErr {
  double v = 0, e = 0;
};

// Sum over u in Z of (x + u)^{-k} for non-integral rational x.
ValErr integer_translates_sum(int k, const Rat& x) {
  Rat fr = x - Rat(rat_floor(x));
  double f = to_double(fr);
  ZetaResult z1 = hurwitz_zeta(k, f);
  ZetaResult z2 = hurwitz_zeta(k, 1.0 - f);
  double v = (k % 2 == 0) ? z1.value + z2.value : z1.value - z2.value;
  double e = z1.err_bound + z2.err_bound +
             1e-15 * (std::abs(z1.value) + std::abs(z2.value));
  return {v, e};
}

// Closed form for S = sum_{m in Z} sinc(pi (c + b m))^k, b != 0 rational.
// Residue classes mod q (b = p/q reduced) move the argument by the integer p,
// so sin is periodic up to sign and each class collapses to Hurwitz zetas.
ValErr rank1_closed_form(int k, Rat b, Rat c) {
  if (b < 0) {
    b = -b;
    c = -c;  // reindex m -> -m
  }
  BigInt pz = b.get_num(), qz = b.get_den();
  if (qz > big_of(1000000))
    throw BudgetExceeded("closed-form residue classes exceed budget: " + qz.get_str());
  long long q = qz.get_si();
  Rat p(pz);
  double pd = to_double(p);
  bool kp_even = (k % 2 == 0) || mpz_even_p(pz.get_mpz_t());
  double pik = ipow(1.0 / M_PI, k);

  KahanSum acc;
  double err = 0;
  for (long long j = 0; j < q; ++j) {
    Rat t = c + b * rat_of(j);
    if (is_integer(t)) {
      // sin vanishes on the whole class; only the removable singularity at
      // argument 0 contributes, with sinc(0)^k = 1.
      if (is_integer(t / p)) acc.add(1.0);
      continue;
    }
    double sk = ipow(sinpi_exact(t), k);
    ValErr inner;
    double scale;
    if (kp_even) {
      inner = integer_translates_sum(k, t / p);
      scale = ipow(1.0 / pd, k);
    } else {  // sign alternates along the class: period-2 split
      ValErr i1 = integer_translates_sum(k, t / (p * 2));
      ValErr i2 = integer_translates_sum(k, (t + p) / (p * 2));
      inner = {i1.v - i2.v, i1.e + i2.e};
      scale = ipow(1.0 / (2 * pd), k);
    }
    acc.add(sk * pik * scale * inner.v);
    err += std::abs(sk) * pik * scale * inner.e +
           1e-15 * std::abs(sk * pik * scale * inner.v);
  }
  return {acc.value(), err + 1e-16 * std::abs(acc.value())};
}

// ---------- generic path: float enumeration + certified tail ----------

struct FloatCholesky {
  int n = 0;
  std::vector<double> d;               // diagonal of the LDL^T form
  std::vector<std::vector<double>> l;  // strictly upper part l[i][j], j > i
};

FloatCholesky float_decompose(const RatMat& gram) {
  int n = gram.rows();
  std::vector<std::vector<double>> q(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i][j] = to_double(gram.at(i, j));
  FloatCholesky ch;
  ch.n = n;
  ch.d.assign(n, 0.0);
  ch.l.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    if (!(q[i][i] > 0)) throw InvariantViolation("float Cholesky: not positive definite");
    ch.d[i] = q[i][i];
    for (int j = i + 1; j < n; ++j) ch.l[i][j] = q[i][j] / q[i][i];
    for (int j = i + 1; j < n; ++j)
      for (int kk = j; kk < n; ++kk) q[j][kk] -= q[i][j] * q[i][kk] / q[i][i];
  }
  return ch;
}

// Enumerates all m with ||W m + y0||^2 <= C and feeds them to `visit`.
// Interval bounds are rounded outward, so points on the boundary may be
// included but none below C are missed.
struct FloatEnum {
  const FloatCholesky& ch;
  const std::vector<double>& center;  // -W^{-1} y0
  long long budget;
  long long nodes = 0;
  std::vector<long long> m;

  template <typename F>
  void descend(int i, double rem, F&& visit) {
    if (i < 0) {
      visit(m);
      return;
    }
    double c = -center[i];
    for (int j = i + 1; j < ch.n; ++j) c += ch.l[i][j] * (m[j] - center[j]);
    double s = std::sqrt(std::max(0.0, rem / ch.d[i]));
    double widen = 1e-9 * (1.0 + std::abs(c) + s);
    long long lo = static_cast<long long>(std::ceil(-c - s - widen));
    long long hi = static_cast<long long>(std::floor(-c + s + widen));
    for (long long v = lo; v <= hi; ++v) {
      if (++nodes > budget)
        throw BudgetExceeded("spectral enumeration exceeded node budget of " +
                             std::to_string(budget));
      m[i] = v;
      double t = v + c;
      double rem2 = rem - ch.d[i] * t * t;
      if (rem2 < 0 && -rem2 > widen * ch.d[i] * (1.0 + std::abs(t))) continue;
      descend(i - 1, std::max(rem2, 0.0), visit);
    }
    m[i] = 0;
  }
};

double ball_volume(int n, double R) {
  return std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0) +
                  n * std::log(R));
}

}  // namespace

namespace detail {

struct Problem {
  std::vector<int> axes;  // indices into the TestFunction scales
  RatMat P;               // |axes| rows, V columns
  RatVec shift;           // |axes|
};

class Engine {
 public:
  Engine(const TestFunction& f, double tail_tol, long long budget)
      : f_(f), tol_(tail_tol), budget_(budget) {}

  EngineResult run(Problem pr) {
    if (pr.axes.empty()) {
      EngineResult r;
      r.value = 1.0;
      r.method = "empty";
      return r;
    }

    // 1) axis elimination via the exact sinc-zero pattern
    for (size_t ai = 0; ai < pr.axes.size(); ++ai) {
      const Rat& a = f_.scales()[pr.axes[ai]];
      bool integral_row = true;
      for (int j = 0; j < pr.P.cols(); ++j)
        if (!is_integer(a * pr.P.at(static_cast<int>(ai), j))) {
          integral_row = false;
          break;
        }
      if (!integral_row || !is_integer(a * pr.shift[ai])) continue;
      return eliminate_axis(pr, static_cast<int>(ai));
    }

    // 2) canonicalize columns (HNF) and split into independent blocks
    canonicalize(pr);
    auto comps = components(pr);
    if (comps.size() > 1) {
      EngineResult prod;
      prod.value = 1.0;
      prod.method = "split(" + std::to_string(comps.size()) + "):";
      bool first = true;
      for (auto& sub : comps) {
        EngineResult cr = run(std::move(sub));
        double e = std::abs(prod.value) * cr.err_bound +
                   std::abs(cr.value) * prod.err_bound + prod.err_bound * cr.err_bound;
        prod.value *= cr.value;
        prod.err_bound = e;
        prod.points += cr.points;
        prod.method += (first ? "" : "|") + cr.method;
        first = false;
      }
      return prod;
    }

    // 3) base cases
    if (pr.P.cols() == 1) {
      const Rat& a = f_.scales()[pr.axes[0]];
      ValErr ve = rank1_closed_form(f_.order(), a * pr.P.at(0, 0), a * pr.shift[0]);
      double ad = to_double(a);
      EngineResult res;
      res.value = ad * ve.v;
      res.err_bound = ad * ve.e + 1e-16 * std::abs(ad * ve.v);
      res.method = "closed";
      return res;
    }
    return enumerate_generic(pr);
  }

 private:
  // Axis ai has a_i * row integral and a_i * shift_i integral: every point
  // with xi_ai != 0 is a sinc zero. Restrict to the integer solutions of
  // r * m = c; the axis factor becomes the constant a_i.
  EngineResult eliminate_axis(const Problem& pr, int ai) {
    const Rat& a = f_.scales()[pr.axes[ai]];
    int V = pr.P.cols();
    IntVec r(V);
    bool all_zero = true;
    for (int j = 0; j < V; ++j) {
      Rat e = a * pr.P.at(ai, j);
      r[j] = e.get_num();
      if (r[j] != 0) all_zero = false;
    }
    if (all_zero) throw InvariantViolation("zero row in spectral reduction (rank defect)");
    Rat cq = -(a * pr.shift[ai]);
    BigInt c = cq.get_num();

    EngineResult res;
    IntMat U = row_gcd_transform(r);
    BigInt g = 0;
    for (int j = 0; j < V; ++j) g += r[j] * U.at(j, 0);
    if (g <= 0) throw InvariantViolation("row gcd transform must yield positive gcd");
    if (!mpz_divisible_p(c.get_mpz_t(), g.get_mpz_t())) {
      res.value = 0.0;  // no coset point escapes the sinc zeros
      res.method = "zero";
      return res;
    }
    BigInt q0 = c / g;

    // Substitute m = U * (q0, q'): shift picks up q0 * (P U e_0); variables
    // reduce to q'; drop the eliminated axis (constant factor a_i).
    RatMat PU(pr.P.rows(), V);
    for (int i = 0; i < pr.P.rows(); ++i)
      for (int j = 0; j < V; ++j) {
        Rat s(0);
        for (int t = 0; t < V; ++t) s += pr.P.at(i, t) * Rat(U.at(t, j));
        PU.at(i, j) = s;
      }
    Problem sub;
    for (size_t i = 0; i < pr.axes.size(); ++i) {
      if (static_cast<int>(i) == ai) continue;
      sub.axes.push_back(pr.axes[i]);
      sub.shift.push_back(pr.shift[i] + PU.at(static_cast<int>(i), 0) * Rat(q0));
    }
    sub.P = RatMat(static_cast<int>(sub.axes.size()), V - 1);
    int ii = 0;
    for (int i = 0; i < pr.P.rows(); ++i) {
      if (i == ai) continue;
      for (int j = 1; j < V; ++j) sub.P.at(ii, j - 1) = PU.at(i, j);
      ++ii;
    }
    EngineResult inner = run(std::move(sub));
    double ad = to_double(a);
    inner.value *= ad;
    inner.err_bound = inner.err_bound * ad + 1e-16 * std::abs(inner.value);
    inner.method = "kill," + inner.method;
    return inner;
  }

  // Right-multiplies P by a unimodular matrix bringing den*P to column HNF;
  // the summation set P * Z^V is unchanged and block structure becomes visible.
  void canonicalize(Problem& pr) {
    int R = pr.P.rows(), V = pr.P.cols();
    BigInt den = 1;
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < V; ++j) den = lcm(den, pr.P.at(i, j).get_den());
    IntMat M(R, V);
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < V; ++j) {
        Rat e = pr.P.at(i, j) * Rat(den);
        M.at(i, j) = e.get_num();
      }
    IntMat H = hermite_normal_form(M);
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < V; ++j) {
        Rat e(H.at(i, j), den);
        e.canonicalize();
        pr.P.at(i, j) = e;
      }
  }

  // Connected components of the row/column support graph; a split means the
  // sum factorizes over independent variable blocks.
  std::vector<Problem> components(const Problem& pr) {
    int R = pr.P.rows(), V = pr.P.cols();
    std::vector<int> parent(R);
    for (int i = 0; i < R; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<int> col_owner(V, -1);
    for (int j = 0; j < V; ++j)
      for (int i = 0; i < R; ++i)
        if (pr.P.at(i, j) != 0) {
          if (col_owner[j] < 0)
            col_owner[j] = i;
          else
            parent[find(col_owner[j])] = find(i);
        }
    for (int j = 0; j < V; ++j)
      if (col_owner[j] < 0)
        throw InvariantViolation("zero column in spectral reduction (rank defect)");

    std::vector<int> roots;
    for (int i = 0; i < R; ++i)
      if (find(i) == i) roots.push_back(i);
    if (roots.size() <= 1) return {};

    std::vector<Problem> out;
    for (int root : roots) {
      Problem sub;
      std::vector<int> rows, cols;
      for (int i = 0; i < R; ++i)
        if (find(i) == root) rows.push_back(i);
      for (int j = 0; j < V; ++j)
        if (find(col_owner[j]) == root) cols.push_back(j);
      if (rows.size() != cols.size())
        throw InvariantViolation("non-square spectral component (rank defect)");
      sub.P = RatMat(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
      for (size_t i = 0; i < rows.size(); ++i) {
        sub.axes.push_back(pr.axes[rows[i]]);
        sub.shift.push_back(pr.shift[rows[i]]);
        for (size_t j = 0; j < cols.size(); ++j)
          sub.P.at(static_cast<int>(i), static_cast<int>(j)) = pr.P.at(rows[i], cols[j]);
      }
      out.push_back(std::move(sub));
    }
    return out;
  }

  // Certified bound on sum of prod_i a_i |sinc(pi y_i)|^k over the points of
  // an affine lattice in y-space with pairwise distance >= h*sqrt(n),
  // restricted to ||y|| > M: disjoint-cube packing + integral comparison.
  double tail_bound(const std::vector<double>& a, int kk, double h, double M) const {
    int n = static_cast<int>(a.size());
    double base = M / std::sqrt(static_cast<double>(n)) - h;
    for (double ai : a)
      if (base <= 1.0 / (M_PI * ai)) return HUGE_VAL;
    double total = 0;
    for (int i = 0; i < n; ++i) {
      double term =
          2.0 * a[i] * ipow(1.0 / M_PI, kk) * std::pow(base, 1.0 - kk) / (kk - 1);
      for (int j = 0; j < n; ++j)
        if (j != i) term *= h * a[j] + 2.0 * kk / (M_PI * (kk - 1));
      total += term;
    }
    return total * ipow(1.0 / h, n);
  }

  EngineResult enumerate_generic(const Problem& pr) {
    int V = pr.P.cols();
    int kk = f_.order();
    std::vector<double> a;
    for (int idx : pr.axes) a.push_back(to_double(f_.scales()[idx]));

    // y = W m + y0 with W = diag(a) * P, y0 = a .* shift; the summand is
    // prod_i a_i sinc(pi y_i)^k.
    RatMat W(V, V);
    RatVec y0r(V);
    for (int i = 0; i < V; ++i) {
      const Rat& ar = f_.scales()[pr.axes[i]];
      y0r[i] = ar * pr.shift[i];
      for (int j = 0; j < V; ++j) W.at(i, j) = ar * pr.P.at(i, j);
    }
    LatticePoint sv = shortest_vector(LatticeBasis{W}, budget_);
    double delta = std::sqrt(to_double(sv.norm2)) * (1.0 - 1e-12);
    double h = delta / std::sqrt(static_cast<double>(V));

    // Enumeration radius: grow until the certified tail meets the target.
    double target = 0.5 * tol_;
    double worst = 0;
    for (double ai : a) worst = std::max(worst, 1.0 / (M_PI * ai));
    double M = std::sqrt(static_cast<double>(V)) * (h + worst) + 1.0;
    for (int iter = 0;; ++iter) {
      if (tail_bound(a, kk, h, M) <= target) break;
      M *= 1.5;
      if (iter > 200)
        throw BudgetExceeded("tail bound does not reach tolerance " + std::to_string(tol_));
    }
    double detW = std::abs(to_double(det(W)));
    double npts_est = ball_volume(V, M + delta) / detW;
    if (npts_est > 2.0 * static_cast<double>(budget_)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3g", npts_est);
      throw BudgetExceeded("estimated spectral point count " + std::string(buf) +
                           " exceeds budget");
    }

    RatVec cr = mat_vec(inverse(W), y0r);  // exact center, then rounded
    std::vector<double> center(V);
    for (int i = 0; i < V; ++i) center[i] = -to_double(cr[i]);

    RatMat gram(V, V);
    for (int i = 0; i < V; ++i)
      for (int j = 0; j < V; ++j) {
        Rat s(0);
        for (int t = 0; t < V; ++t) s += W.at(t, i) * W.at(t, j);
        gram.at(i, j) = s;
      }
    FloatCholesky ch = float_decompose(gram);

    std::vector<std::vector<double>> Wd(V, std::vector<double>(V));
    std::vector<double> y0d(V);
    for (int i = 0; i < V; ++i) {
      y0d[i] = to_double(y0r[i]);
      for (int j = 0; j < V; ++j) Wd[i][j] = to_double(W.at(i, j));
    }

    double Menum = M * (1.0 + 1e-8) + 1e-9;
    FloatEnum en{ch, center, budget_, 0, std::vector<long long>(V, 0)};
    KahanSum acc, absacc;
    en.descend(V - 1, Menum * Menum, [&](const std::vector<long long>& m) {
      double term = 1.0;
      for (int i = 0; i < V; ++i) {
        double y = y0d[i];
        for (int j = 0; j < V; ++j) y += Wd[i][j] * m[j];
        term *= a[i] * ipow(sinc_pi(y), kk);
      }
      acc.add(term);
      absacc.add(std::abs(term));
    });

    EngineResult res;
    res.value = acc.value();
    res.points = en.nodes;
    res.err_bound = tail_bound(a, kk, h, M) + 1e-13 * (1.0 + absacc.value());
    res.method =
        "enum(" + std::to_string(V) + "d," + std::to_string(en.nodes) + "pts)";
    return res;
  }

  const TestFunction& f_;
  double tol_;
  long long budget_;
};

}  // namespace detail

EngineResult affine_dual_sum(const TestFunction& f, const RatMat& P, const RatVec& shift,
                             double tail_tol, long long budget) {
  int D = f.dimension();
  if (P.rows() != D || P.cols() != D || static_cast<int>(shift.size()) != D)
    throw std::invalid_argument("affine_dual_sum: dimension mismatch");
  if (!(tail_tol > 0)) throw std::invalid_argument("affine_dual_sum: tail_tol must be > 0");
  if (det(P) == 0) throw InvariantViolation("affine_dual_sum: singular matrix");
  detail::Problem pr;
  for (int i = 0; i < D; ++i) pr.axes.push_back(i);
  pr.P = P;
  pr.shift = shift;
  detail::Engine eng(f, tail_tol, budget);
  return eng.run(std::move(pr));
}

}  // namespace bslab
