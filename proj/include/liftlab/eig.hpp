#pragma once

#include <vector>

#include "liftlab/rational.hpp"

namespace liftlab {

/// Dense symmetric matrix of binary64 values; symmetry is enforced by storage
/// (only the upper triangle is kept).
class FloatSymMatrix {
 public:
  FloatSymMatrix() = default;
  explicit FloatSymMatrix(int n) : n_(n), data_(std::size_t(n) * (n + 1) / 2, 0.0) {}

  int dim() const { return n_; }

  double at(int i, int j) const { return data_[idx(i, j)]; }
  void set(int i, int j, double v);

  static FloatSymMatrix identity(int n);
  static FloatSymMatrix from_rational(const RatMatrix& m);

 private:
  std::size_t idx(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::size_t(j) * (j + 1) / 2 + i;
  }
  int n_ = 0;
  std::vector<double> data_;
};

/// Smallest eigenvalue; throws on non-finite entries.
double min_eigenvalue(const FloatSymMatrix& m);

/// Eigendecomposition with negative eigenvalues clipped to zero.
FloatSymMatrix psd_nearest(const FloatSymMatrix& m);

double frobenius_distance(const FloatSymMatrix& a, const FloatSymMatrix& b);

}  // namespace liftlab
