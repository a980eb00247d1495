#include "bslab/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace bslab {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // decimal literal: shift the point away and divide by the matching power of ten
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || digits.empty()) throw std::invalid_argument("bad decimal literal: " + s);
    BigInt num(digits, 10);
    BigInt den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  return q;
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  Rat q(x);
  q.canonicalize();
  return q;
}

double to_double(const Rat& q) { return q.get_d(); }

BigInt rat_floor(const Rat& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt rat_ceil(const Rat& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

Rat rat_content(const RatVec& v) {
  BigInt den_lcm = 1;
  for (const Rat& q : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
  BigInt num_gcd = 0;
  for (const Rat& q : v) {
    BigInt scaled = q.get_num() * (den_lcm / q.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  if (num_gcd == 0) return Rat(0);
  Rat c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatVec RatMat::row(int i) const {
  RatVec r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

RatVec RatMat::col(int j) const {
  RatVec c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

RatMat RatMat::transposed() const {
  RatMat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RatMat RatMat::without_row(int i) const {
  RatMat r(rows_ - 1, cols_);
  for (int ii = 0, oi = 0; ii < rows_; ++ii) {
    if (ii == i) continue;
    for (int j = 0; j < cols_; ++j) r.at(oi, j) = at(ii, j);
    ++oi;
  }
  return r;
}

RatMat mat_mul(const RatMat& x, const RatMat& y) {
  if (x.cols() != y.rows()) throw std::invalid_argument("mat_mul shape mismatch");
  RatMat z(x.rows(), y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int k = 0; k < x.cols(); ++k) {
      const Rat& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols(); ++j) z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

RatVec mat_vec(const RatMat& m, const RatVec& v) {
  if (m.cols() != static_cast<int>(v.size())) throw std::invalid_argument("mat_vec shape mismatch");
  RatVec r(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) r[i] += m.at(i, j) * v[j];
  return r;
}

Rat det(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  RatMat a = m;
  int n = m.rows();
  Rat d = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (a.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      d = -d;
    }
    d *= a.at(col, col);
    Rat inv_p = 1 / a.at(col, col);
    for (int i = col + 1; i < n; ++i) {
      if (a.at(i, col) == 0) continue;
      Rat f = a.at(i, col) * inv_p;
      for (int j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
    }
  }
  return d;
}

RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  int n = m.rows();
  RatMat a = m;
  RatMat inv = RatMat::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (a.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::invalid_argument("singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    Rat p = a.at(col, col);
    for (int j = 0; j < n; ++j) {
      a.at(col, j) /= p;
      inv.at(col, j) /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || a.at(i, col) == 0) continue;
      Rat f = a.at(i, col);
      for (int j = 0; j < n; ++j) {
        a.at(i, j) -= f * a.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat int_mat_mul(const IntMat& x, const IntMat& y) {
  if (x.cols() != y.rows()) throw std::invalid_argument("int_mat_mul shape mismatch");
  IntMat z(x.rows(), y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int k = 0; k < x.cols(); ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < y.cols(); ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return z;
}

namespace {

void col_swap(IntMat& m, int a, int b) {
  for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

void col_neg(IntMat& m, int a) {
  for (int i = 0; i < m.rows(); ++i) m.at(i, a) = -m.at(i, a);
}

// col_a -= q * col_b
void col_axpy(IntMat& m, int a, const BigInt& q, int b) {
  if (q == 0) return;
  for (int i = 0; i < m.rows(); ++i) m.at(i, a) -= q * m.at(i, b);
}

}  // namespace

IntMat hermite_normal_form(const IntMat& m) {
  IntMat h = m;
  int rows = h.rows(), cols = h.cols();
  int pivot_col = 0;
  for (int row = 0; row < rows && pivot_col < cols; ++row) {
    // Euclidean reduction among columns pivot_col.. on this row.
    while (true) {
      int nz = -1;
      for (int j = pivot_col; j < cols; ++j)
        if (h.at(row, j) != 0 && (nz < 0 || abs(h.at(row, j)) < abs(h.at(row, nz)))) nz = j;
      if (nz < 0) break;
      if (nz != pivot_col) col_swap(h, pivot_col, nz);
      if (h.at(row, pivot_col) < 0) col_neg(h, pivot_col);
      bool clean = true;
      for (int j = pivot_col + 1; j < cols; ++j) {
        if (h.at(row, j) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), h.at(row, j).get_mpz_t(), h.at(row, pivot_col).get_mpz_t());
        col_axpy(h, j, q, pivot_col);
        if (h.at(row, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(row, pivot_col) == 0) continue;  // row has no pivot, move on
    // reduce earlier columns against this pivot
    for (int j = 0; j < pivot_col; ++j) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(row, j).get_mpz_t(), h.at(row, pivot_col).get_mpz_t());
      col_axpy(h, j, q, pivot_col);
    }
    ++pivot_col;
  }
  return h;
}

IntMat row_gcd_transform(const IntVec& row) {
  int n = static_cast<int>(row.size());
  if (n == 0) throw std::invalid_argument("empty row");
  IntMat work(1, n);
  for (int j = 0; j < n; ++j) work.at(0, j) = row[j];
  IntMat u = IntMat::identity(n);
  while (true) {
    int nz = -1;
    for (int j = 0; j < n; ++j)
      if (work.at(0, j) != 0 && (nz < 0 || abs(work.at(0, j)) < abs(work.at(0, nz)))) nz = j;
    if (nz < 0) break;
    if (nz != 0) {
      col_swap(work, 0, nz);
      col_swap(u, 0, nz);
    }
    if (work.at(0, 0) < 0) {
      col_neg(work, 0);
      col_neg(u, 0);
    }
    bool done = true;
    for (int j = 1; j < n; ++j) {
      if (work.at(0, j) == 0) continue;
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), work.at(0, j).get_mpz_t(), work.at(0, 0).get_mpz_t());
      col_axpy(work, j, q, 0);
      col_axpy(u, j, q, 0);
      if (work.at(0, j) != 0) done = false;
    }
    if (done) break;
  }
  return u;
}

std::vector<BigInt> elementary_divisors(IntMat m) {
  int r = m.rows(), c = m.cols();
  std::vector<BigInt> divs;
  int top = 0;
  while (top < r && top < c) {
    // find smallest nonzero entry in the remaining block
    int bi = -1, bj = -1;
    for (int i = top; i < r; ++i)
      for (int j = top; j < c; ++j)
        if (m.at(i, j) != 0 && (bi < 0 || abs(m.at(i, j)) < abs(m.at(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    for (int j = top; j < c; ++j) std::swap(m.at(top, j), m.at(bi, j));
    for (int i = top; i < r; ++i) std::swap(m.at(i, top), m.at(i, bj));
    bool again = false;
    for (int i = top + 1; i < r; ++i) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), m.at(i, top).get_mpz_t(), m.at(top, top).get_mpz_t());
      for (int j = top; j < c; ++j) m.at(i, j) -= q * m.at(top, j);
      if (m.at(i, top) != 0) again = true;
    }
    for (int j = top + 1; j < c; ++j) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), m.at(top, j).get_mpz_t(), m.at(top, top).get_mpz_t());
      for (int i = top; i < r; ++i) m.at(i, j) -= q * m.at(i, top);
      if (m.at(top, j) != 0) again = true;
    }
    if (again) continue;
    divs.push_back(abs(m.at(top, top)));
    ++top;
  }
  // enforce the divisibility chain
  for (size_t i = 0; i + 1 < divs.size(); ++i)
    for (size_t j = i + 1; j < divs.size(); ++j) {
      BigInt g, l;
      mpz_gcd(g.get_mpz_t(), divs[i].get_mpz_t(), divs[j].get_mpz_t());
      if (g == divs[i]) continue;
      l = divs[i] / g * divs[j];
      divs[i] = g;
      divs[j] = l;
    }
  return divs;
}

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace bslab
