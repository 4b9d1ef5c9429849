#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "skewfit/spd_matrix.hpp"

namespace skewfit {

// Which nested member of the skew-t family is fit. The four combinations are
// normal / student-t / skew-normal / skew-t.
struct ModelSpec {
  bool skewed = true;        // psi free vs fixed at 0
  bool heavy_tailed = true;  // nu finite vs the Gaussian limit

  static ModelSpec normal() { return {false, false}; }
  static ModelSpec student_t() { return {false, true}; }
  static ModelSpec skew_normal() { return {true, false}; }
  static ModelSpec skew_t() { return {true, true}; }
  static ModelSpec from_name(const std::string& name);
  std::string name() const;  // "normal", "t", "sn", "st"
};

struct PriorConfig {
  double iw_dof = 0.0;       // m; 0 with a zero scale is the objective prior
  Eigen::MatrixXd iw_scale;  // Lambda; empty means the zero matrix
  std::vector<double> nu_grid = default_nu_grid();

  // 20 values on [1, 100], denser where the density changes fastest.
  static std::vector<double> default_nu_grid();
  Eigen::MatrixXd iw_scale_or_zero(int p) const;
  void validate() const;
};

// The three parameterizations:
//   (xi, alpha, Sigma, nu)  observed-data density,
//   (xi, delta, Sigma, nu)  prior elicitation (delta constrained to an
//                           ellipsoid given Sigma),
//   (xi, psi, G, nu)        sampling (unconstrained given G SPD).
struct AlphaParams {
  Eigen::VectorXd xi, alpha;
  SpdMatrix sigma;
  double nu;
};

struct DeltaParams {
  Eigen::VectorXd xi, delta;
  SpdMatrix sigma;
  double nu;
};

struct ThetaParams {
  Eigen::VectorXd xi, psi;
  SpdMatrix g;
  double nu;
};

// sqrt of diag(Sigma), and the correlation matrix Omega = w^{-1} Sigma w^{-1}
Eigen::VectorXd omega_diag(const SpdMatrix& sigma);
SpdMatrix correlation_from_sigma(const SpdMatrix& sigma);

// delta = Omega a / sqrt(1 + a' Omega a); the image always satisfies
// delta' Omega^{-1} delta < 1.
Eigen::VectorXd delta_from_alpha(const Eigen::VectorXd& alpha,
                                 const SpdMatrix& omega_corr);

// algebraic inverse; requires delta' Omega^{-1} delta < 1
Eigen::VectorXd alpha_from_delta(const Eigen::VectorXd& delta,
                                 const SpdMatrix& omega_corr);

// psi = w delta, G = Sigma - psi psi'; throws ConstraintError when the
// implied G is not positive definite (delta outside the ellipsoid).
ThetaParams theta_from_delta(const DeltaParams& dp);
DeltaParams delta_from_theta(const ThetaParams& tp);
AlphaParams alpha_from_theta(const ThetaParams& tp);
DeltaParams delta_params_from_alpha(const AlphaParams& ap);

// log |J| of theta_star -> theta: sum_j -0.5 log(G_jj + psi_j^2)
double jacobian_logdet(const ThetaParams& tp);

// log density of the uniform prior on the ellipsoid, -inf outside it
double log_prior_delta_given_sigma(const Eigen::VectorXd& delta,
                                   const SpdMatrix& sigma);

// Full log prior in the theta parameterization: flat xi, inverse Wishart
// (kernel) on Sigma = G + psi psi', uniform delta given Sigma plus the
// Jacobian when the model is skewed, uniform nu over the grid when heavy
// tailed. -inf encodes a constraint violation.
double log_prior(const ThetaParams& tp, const ModelSpec& spec,
                 const PriorConfig& cfg);

struct PrecheckResult {
  bool ok = false;
  std::string reason;
};

// Posterior propriety preconditions: n >= p + 1 and a proper (finite,
// non-empty) nu grid.
PrecheckResult validate_posterior_preconditions(long n, int p,
                                                const PriorConfig& cfg);

}  // namespace skewfit
