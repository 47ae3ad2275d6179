#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace liftlab {

/// Error type for all reported (recoverable) failures in the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Exact rational scalar. mpq_class keeps gcd(|num|, den) = 1 and den > 0
// after every arithmetic operation, so the canonical-form invariant holds
// by construction.
using Rational = mpq_class;

using RatVector = std::vector<Rational>;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational rat_parse(const std::string& s);
std::string rat_str(const Rational& r);

inline Rational rat_div(const Rational& a, const Rational& b) {
  if (b == 0) throw Error("division by zero");
  return a / b;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rat_max(const Rational& a, const Rational& b) { return a > b ? a : b; }

std::size_t rat_hash(const Rational& r);

RatVector rat_vec(std::initializer_list<long> entries);

inline Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Dense rational matrix, row major.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  RatVector row(int i) const {
    RatVector r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
  }
  RatVector col(int j) const {
    RatVector c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  /// Exact PSD test for symmetric matrices via LDL^T elimination.
  bool is_psd() const;

 private:
  int rows_ = 0, cols_ = 0;
  RatVector data_;
};

}  // namespace liftlab
