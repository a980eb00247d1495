#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bslab {

using Rat = mpq_class;
using BigInt = mpz_class;
using RatVec = std::vector<Rat>;

// gmpxx provides no long long constructor; 64-bit long carries the value.
static_assert(sizeof(long) == 8, "64-bit long required");
inline BigInt big_of(long long v) { return BigInt(static_cast<long>(v)); }
inline Rat rat_of(long long v) { return Rat(big_of(v)); }
inline Rat rat_of(long long num, long long den) {
  Rat q(big_of(num), big_of(den));
  q.canonicalize();
  return q;
}

// Parses "3", "-7/4", or a plain decimal like "1.25" into an exact rational.
Rat rat_from_string(const std::string& s);

// Exact conversion; every finite double is a dyadic rational.
Rat rat_from_double(double x);

double to_double(const Rat& q);

BigInt rat_floor(const Rat& q);
BigInt rat_ceil(const Rat& q);

bool is_integer(const Rat& q);

// Positive generator of the additive subgroup of Q generated by the entries,
// or 0 if all entries vanish.
Rat rat_content(const RatVec& v);

// Dense rational matrix, row-major.
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static RatMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  RatVec row(int i) const;
  RatVec col(int j) const;

  RatMat transposed() const;
  RatMat without_row(int i) const;

  bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

RatMat mat_mul(const RatMat& x, const RatMat& y);
RatVec mat_vec(const RatMat& m, const RatVec& v);

// Exact determinant (fraction-free not needed at these sizes).
Rat det(const RatMat& m);

// Throws std::invalid_argument on singular input.
RatMat inverse(const RatMat& m);

// Integer matrix utilities on top of GMP integers.
using IntVec = std::vector<BigInt>;
class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static IntMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  BigInt& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const BigInt& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

 private:
  int rows_, cols_;
  std::vector<BigInt> a_;
};

IntMat int_mat_mul(const IntMat& x, const IntMat& y);

// Column-style Hermite normal form: returns H = M * U with U unimodular, H in
// lower column echelon form with positive pivots and reduced off-pivot entries.
// Canonical per lattice: two integer bases span the same lattice iff equal HNF.
IntMat hermite_normal_form(const IntMat& m);

// Unimodular U such that row * U = (g, 0, ..., 0) with g = gcd of the row.
// Columns 1.. of U form a basis of the integer kernel of the row.
IntMat row_gcd_transform(const IntVec& row);

// Elementary divisors (Smith normal form diagonal), nonnegative,
// each dividing the next. Used to check surjectivity of integer maps.
std::vector<BigInt> elementary_divisors(IntMat m);

// Writes q as canonical "p/q" (or "p" when integral).
std::string rat_to_string(const Rat& q);

}  // namespace bslab
