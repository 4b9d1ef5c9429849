#pragma once

#include <Eigen/Dense>
#include <vector>

#include "skewfit/model.hpp"

namespace skewfit {

struct Dataset {
  Eigen::MatrixXd y;  // n x p

  Dataset() = default;
  explicit Dataset(Eigen::MatrixXd rows);

  long n() const { return y.rows(); }
  int p() const { return static_cast<int>(y.cols()); }
  Eigen::VectorXd row(long i) const { return y.row(i).transpose(); }
};

// Per-observation latent variables of the stochastic representation.
struct LatentState {
  Eigen::VectorXd z;
  Eigen::VectorXd v;  // all entries > 0
};

// Observed-data skew-t log density of one observation,
//   log 2 + log t_p(y; nu) + log T_1(a' w^{-1}(y - xi) sqrt((nu+p)/(Q_y+nu)); nu+p)
double st_logpdf(const Eigen::VectorXd& y_row, const AlphaParams& ap);

// Sum of per-row log densities under the spec'd nested model, with
// (xi, alpha, Sigma, nu) recovered from the theta parameterization.
double observed_loglik(const Dataset& data, const ThetaParams& tp,
                       const ModelSpec& spec);

// Log of the augmented density of (y, z, v) given theta, with all Gaussian
// and Gamma normalizing constants included so the value is an absolute log
// density (marginal-likelihood estimates stay comparable across models).
double augmented_loglik(const Dataset& data, const ThetaParams& tp,
                        const LatentState& lat);

// Model-aware variant: light-tailed models fix v = 1 and drop the Gamma
// factor; the z factor is always present.
double augmented_loglik(const Dataset& data, const ThetaParams& tp,
                        const LatentState& lat, const ModelSpec& spec);

struct CmlEstimates {
  Eigen::VectorXd xi, psi;
  SpdMatrix g;
};

// Closed-form maximizers of the augmented likelihood treating the latents as
// observed. A near-degenerate psi denominator falls back to psi = 0 (the
// alpha = 0 boundary); a singular G-hat raises DegenerateLatentsError.
CmlEstimates cml_estimates(const Dataset& data, const LatentState& lat);
CmlEstimates cml_estimates(const Dataset& data, const LatentState& lat,
                           bool force_psi_zero);

// Continuous root of  n log(nu/2) - n psi(nu/2) = sum v - sum log v - n,
// +inf when the right side is <= 0 (no finite root).
double solve_nu_equation_continuous(const Eigen::VectorXd& v);

// The continuous root snapped to the nearest grid value; max(grid) when the
// root is infinite.
double solve_nu_equation(const Eigen::VectorXd& v,
                         const std::vector<double>& grid);

}  // namespace skewfit
