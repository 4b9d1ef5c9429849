#pragma once

#include <Eigen/Dense>

#include "skewfit/common.hpp"

namespace skewfit {

// Symmetric positive-definite matrix with an eagerly cached lower Cholesky
// factor. Construction validates symmetry (to 1e-12 relative) and positive
// definiteness; a pivot <= 1e-12 * max-diagonal raises MatrixError instead of
// jittering, so callers decide recovery.
class SpdMatrix {
 public:
  explicit SpdMatrix(Eigen::MatrixXd m);

  static SpdMatrix identity(int p) {
    return SpdMatrix(Eigen::MatrixXd::Identity(p, p));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }
  const Eigen::MatrixXd& chol() const { return l_; }
  double log_det() const { return log_det_; }

  double operator()(int i, int j) const { return m_(i, j); }

  // Solve m * x = b through the cached factor.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;
  Eigen::MatrixXd inverse() const;

  // x' m^{-1} x
  double quad_form(const Eigen::VectorXd& x) const;

 private:
  Eigen::MatrixXd m_;
  Eigen::MatrixXd l_;
  double log_det_ = 0.0;
};

}  // namespace skewfit
