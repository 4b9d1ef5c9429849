#pragma once

#include <Eigen/Dense>

#include "skewfit/rng.hpp"
#include "skewfit/spd_matrix.hpp"

namespace skewfit {

// Probability kernels used by the model, the proposals and the simulator.
// Every sampler takes an explicit RngStream; there is no global RNG state.

double mvn_logpdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                  const SpdMatrix& cov);

Eigen::VectorXd mvn_sample(const Eigen::VectorXd& mean, const SpdMatrix& cov,
                           RngStream& rng);

// Multivariate Student-t density
//   t_p(y; nu) = Gamma((nu+p)/2) / (|S|^{1/2} (pi nu)^{p/2} Gamma(nu/2))
//                * (1 + Q_y/nu)^{-(nu+p)/2}
double mvt_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& loc,
                  const SpdMatrix& scale, double dof);

// Gamma in the shape-rate convention: density ~ v^{shape-1} e^{-rate v},
// so Gamma(nu/2, nu/2) has mean one.
double gamma_sample(double shape, double rate, RngStream& rng);
double gamma_logpdf(double v, double shape, double rate);

// Inverse Wishart with convention
//   pi(X) ~ |X|^{-(m+p+1)/2} exp(-tr(L X^{-1})/2)   for (m, L) = (dof, scale),
// so m = 0, L = 0 is the usual objective scale-matrix kernel. logpdf returns
// the normalized density when dof > p-1 and scale is SPD, and the log of the
// unnormalized kernel when scale is the zero matrix.
SpdMatrix invwishart_sample(double dof, const SpdMatrix& scale, RngStream& rng);
double invwishart_logpdf(const SpdMatrix& x, double dof,
                         const Eigen::MatrixXd& scale);

// Exact draw from N(mean, var) conditioned to (0, inf). Far-left means go
// through the exponential-proposal rejection scheme, others through naive
// rejection.
double truncnorm_sample_positive(double mean, double var, RngStream& rng);

// log density of the same truncated normal at x > 0
double truncnorm_logpdf_positive(double x, double mean, double var);

// Multivariate skew-normal: log of 2 phi_p(y; loc, scale) Phi(a' w^{-1} (y-loc))
// with w = diag(sqrt(scale_jj)).
double sn_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& loc,
                 const Eigen::VectorXd& alpha, const SpdMatrix& scale);

}  // namespace skewfit
