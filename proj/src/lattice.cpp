#include "bslab/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "bslab/errors.hpp"

namespace bslab {

LatticeBasis::LatticeBasis(RatMat B) : B_(std::move(B)) {
  if (B_.rows() != B_.cols() || B_.rows() < 1)
    throw ConfigError("lattice basis must be square, dimension >= 1");
  if (det(B_) == 0) throw ConfigError("lattice basis is singular");
}

Rat LatticeBasis::covolume() const {
  Rat d = det(B_);
  return d < 0 ? Rat(-d) : d;
}

LatticeBasis LatticeBasis::dual() const { return LatticeBasis(inverse(B_).transposed()); }

bool LatticeBasis::same_lattice(const LatticeBasis& other) const {
  if (other.dim() != dim()) return false;
  // other = B * T with T integer and |det T| = 1  <=>  equal lattices
  RatMat T = mat_mul(inverse(B_), other.B_);
  for (int i = 0; i < T.rows(); ++i)
    for (int j = 0; j < T.cols(); ++j)
      if (!is_integer(T.at(i, j))) return false;
  Rat d = det(T);
  return d == 1 || d == -1;
}

RatVec LatticeBasis::apply(const std::vector<long long>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != dim())
    throw std::invalid_argument("coefficient dimension mismatch");
  RatVec v(dim(), Rat(0));
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) v[i] += B_.at(i, j) * rat_of(coeffs[j]);
  return v;
}

namespace {

// Exact LDL^T-style data for the positive definite Gram form:
//   Q(m) = sum_i d[i] * (m_i + sum_{j>i} l[i][j] m_j)^2.
struct CholeskyExact {
  std::vector<Rat> d;
  std::vector<std::vector<Rat>> l;
};

CholeskyExact decompose(const RatMat& gram) {
  int n = gram.rows();
  std::vector<std::vector<Rat>> q(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i][j] = gram.at(i, j);
  CholeskyExact ch;
  ch.d.assign(n, Rat(0));
  ch.l.assign(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    if (!(q[i][i] > 0)) throw InvariantViolation("Gram matrix not positive definite");
    ch.d[i] = q[i][i];
    for (int j = i + 1; j < n; ++j) ch.l[i][j] = q[i][j] / q[i][i];
    for (int j = i + 1; j < n; ++j)
      for (int k = j; k < n; ++k) q[j][k] -= q[i][j] * q[i][k] / q[i][i];
  }
  return ch;
}

struct Enumerator {
  const CholeskyExact& ch;
  Rat R2;
  long long budget;
  long long nodes = 0;
  int n;
  std::vector<long long> m;
  std::vector<std::vector<long long>>* out;

  void bump() {
    if (++nodes > budget)
      throw BudgetExceeded("lattice enumeration exceeded node budget of " +
                           std::to_string(budget));
  }

  // Enumerate level i given the exact remaining budget rem = R2 - (terms > i).
  void descend(int i, const Rat& rem) {
    if (i < 0) {
      out->push_back(m);
      return;
    }
    // center c = sum_{j>i} l[i][j] m_j; feasible m_i: d[i] (m_i + c)^2 <= rem
    Rat c(0);
    for (int j = i + 1; j < n; ++j)
      if (m[j] != 0) c += ch.l[i][j] * rat_of(m[j]);
    double cd = to_double(c);
    double sd = std::sqrt(std::max(0.0, to_double(rem / ch.d[i])));
    long long lo = static_cast<long long>(std::ceil(-cd - sd - 1e-9));
    long long hi = static_cast<long long>(std::floor(-cd + sd + 1e-9));
    auto feasible = [&](long long v) {
      Rat t = rat_of(v) + c;
      return ch.d[i] * t * t <= rem;
    };
    // The float window is a seed; adjust by exact tests so no point is missed.
    while (feasible(lo - 1)) --lo;
    while (lo <= hi && !feasible(lo)) ++lo;
    while (feasible(hi + 1)) ++hi;
    while (hi >= lo && !feasible(hi)) --hi;
    for (long long v = lo; v <= hi; ++v) {
      bump();
      m[i] = v;
      Rat t = rat_of(v) + c;
      descend(i - 1, rem - ch.d[i] * t * t);
    }
    m[i] = 0;
  }
};

RatMat gram_of(const RatMat& A) {
  int V = A.cols();
  RatMat g(V, V);
  for (int i = 0; i < V; ++i)
    for (int j = i; j < V; ++j) {
      Rat s(0);
      for (int r = 0; r < A.rows(); ++r) s += A.at(r, i) * A.at(r, j);
      g.at(i, j) = s;
      g.at(j, i) = s;
    }
  return g;
}

}  // namespace

std::vector<std::vector<long long>> enumerate_coeffs(const RatMat& A, const Rat& R2,
                                                     long long budget) {
  if (R2 < 0) return {};
  CholeskyExact ch = decompose(gram_of(A));
  Enumerator en{ch, R2, budget, 0, A.cols(), std::vector<long long>(A.cols(), 0), nullptr};
  std::vector<std::vector<long long>> out;
  en.out = &out;
  en.descend(A.cols() - 1, R2);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticePoint> enumerate_points(const RatMat& A, const Rat& R2,
                                           bool include_zero, long long budget) {
  auto coeffs = enumerate_coeffs(A, R2, budget);
  std::vector<LatticePoint> pts;
  pts.reserve(coeffs.size());
  for (auto& m : coeffs) {
    bool zero = std::all_of(m.begin(), m.end(), [](long long v) { return v == 0; });
    if (zero && !include_zero) continue;
    LatticePoint p;
    p.vec.assign(A.rows(), Rat(0));
    for (int i = 0; i < A.rows(); ++i)
      for (int j = 0; j < A.cols(); ++j)
        if (m[j] != 0) p.vec[i] += A.at(i, j) * rat_of(m[j]);
    p.norm2 = 0;
    for (const Rat& x : p.vec) p.norm2 += x * x;
    p.coeffs = std::move(m);
    pts.push_back(std::move(p));
  }
  return pts;
}

LatticePoint shortest_vector(const LatticeBasis& basis, long long budget) {
  // Initial radius: the shortest basis column is a nonzero lattice vector.
  const RatMat& B = basis.matrix();
  Rat R2;
  for (int j = 0; j < B.cols(); ++j) {
    Rat s(0);
    for (int i = 0; i < B.rows(); ++i) s += B.at(i, j) * B.at(i, j);
    if (j == 0 || s < R2) R2 = s;
  }
  auto pts = enumerate_points(B, R2, false, budget);
  if (pts.empty()) throw InvariantViolation("shortest_vector: no nonzero point found");
  const LatticePoint* best = nullptr;
  for (const auto& p : pts) {
    if (!best || p.norm2 < best->norm2 ||
        (p.norm2 == best->norm2 && p.coeffs < best->coeffs))
      best = &p;
  }
  return *best;
}

LatticeFamily family_stretch_squeeze() {
  LatticeFamily f;
  f.kind = "stretch_squeeze";
  f.member = [](long long n) {
    if (n < 1) throw ConfigError("family index must be >= 1");
    RatMat B(2, 2);
    B.at(0, 0) = rat_of(n * n);
    B.at(1, 1) = rat_of(1, n);
    return LatticeBasis(B);
  };
  return f;
}

LatticeFamily family_dilation(const LatticeBasis& L0) {
  LatticeFamily f;
  f.kind = "dilation";
  RatMat B0 = L0.matrix();
  f.member = [B0](long long n) {
    if (n < 1) throw ConfigError("family index must be >= 1");
    RatMat B = B0;
    for (int i = 0; i < B.rows(); ++i)
      for (int j = 0; j < B.cols(); ++j) B.at(i, j) *= rat_of(n);
    return LatticeBasis(B);
  };
  return f;
}

LatticeFamily family_index_chain(const LatticeBasis& L0) {
  LatticeFamily f;
  f.kind = "index_chain";
  RatMat B0 = L0.matrix();
  f.member = [B0](long long n) {
    if (n < 1) throw ConfigError("family index must be >= 1");
    RatMat B = B0;
    for (int i = 0; i < B.rows(); ++i) B.at(i, 0) *= rat_of(n);
    return LatticeBasis(B);
  };
  return f;
}

}  // namespace bslab
