#include "liftlab/eig.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace liftlab {

void FloatSymMatrix::set(int i, int j, double v) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw Error("FloatSymMatrix index out of range");
  data_[idx(i, j)] = v;
}

FloatSymMatrix FloatSymMatrix::identity(int n) {
  FloatSymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

FloatSymMatrix FloatSymMatrix::from_rational(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error("from_rational: matrix not square");
  FloatSymMatrix f(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j) {
      if (m.at(i, j) != m.at(j, i)) throw Error("from_rational: matrix not symmetric");
      f.set(i, j, to_double(m.at(i, j)));
    }
  return f;
}

static Eigen::MatrixXd to_eigen(const FloatSymMatrix& m) {
  int n = m.dim();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = m.at(i, j);
      if (!std::isfinite(v)) throw Error("non-finite matrix entry");
      a(i, j) = v;
    }
  return a;
}

double min_eigenvalue(const FloatSymMatrix& m) {
  if (m.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

FloatSymMatrix psd_nearest(const FloatSymMatrix& m) {
  int n = m.dim();
  if (n == 0) return m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m));
  Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < n; ++i) ev[i] = std::max(ev[i], 0.0);
  Eigen::MatrixXd r = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  FloatSymMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.set(i, j, 0.5 * (r(i, j) + r(j, i)));
  return out;
}

double frobenius_distance(const FloatSymMatrix& a, const FloatSymMatrix& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch");
  double s = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      double d = a.at(i, j) - b.at(i, j);
      s += d * d;
    }
  return std::sqrt(s);
}

}  // namespace liftlab
