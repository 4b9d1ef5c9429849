#include "skewfit/spd_matrix.hpp"

#include <cmath>

namespace skewfit {

SpdMatrix::SpdMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw MatrixError("SpdMatrix: matrix must be square and non-empty");
  if (!m_.allFinite()) throw MatrixError("SpdMatrix: non-finite entries");
  const int p = dim();

  double max_abs = 0.0, max_asym = 0.0, max_diag = 0.0;
  for (int i = 0; i < p; ++i) {
    max_diag = std::max(max_diag, m_(i, i));
    for (int j = 0; j < p; ++j) {
      max_abs = std::max(max_abs, std::fabs(m_(i, j)));
      max_asym = std::max(max_asym, std::fabs(m_(i, j) - m_(j, i)));
    }
  }
  if (max_asym > 1e-12 * std::max(1.0, max_abs))
    throw MatrixError("SpdMatrix: matrix is not symmetric");
  m_ = 0.5 * (m_ + m_.transpose()).eval();

  l_ = Eigen::MatrixXd::Zero(p, p);
  log_det_ = 0.0;
  const double pivot_floor = 1e-12 * max_diag;
  for (int j = 0; j < p; ++j) {
    double d = m_(j, j);
    for (int k = 0; k < j; ++k) d -= l_(j, k) * l_(j, k);
    if (!(d > 0.0)) throw MatrixError("SpdMatrix: non-positive Cholesky pivot");
    const double pivot = std::sqrt(d);
    if (pivot <= pivot_floor)
      throw MatrixError("SpdMatrix: Cholesky pivot below tolerance");
    l_(j, j) = pivot;
    log_det_ += 2.0 * std::log(pivot);
    for (int i = j + 1; i < p; ++i) {
      double s = m_(i, j);
      for (int k = 0; k < j; ++k) s -= l_(i, k) * l_(j, k);
      l_(i, j) = s / pivot;
    }
  }
  if (!std::isfinite(log_det_))
    throw MatrixError("SpdMatrix: log-determinant not finite");
}

Eigen::VectorXd SpdMatrix::solve(const Eigen::VectorXd& b) const {
  Eigen::VectorXd y = l_.triangularView<Eigen::Lower>().solve(b);
  return l_.transpose().triangularView<Eigen::Upper>().solve(y);
}

Eigen::MatrixXd SpdMatrix::solve(const Eigen::MatrixXd& b) const {
  Eigen::MatrixXd y = l_.triangularView<Eigen::Lower>().solve(b);
  return l_.transpose().triangularView<Eigen::Upper>().solve(y);
}

Eigen::MatrixXd SpdMatrix::inverse() const {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim(), dim());
  return solve(id);
}

double SpdMatrix::quad_form(const Eigen::VectorXd& x) const {
  return l_.triangularView<Eigen::Lower>().solve(x).squaredNorm();
}

}  // namespace skewfit
