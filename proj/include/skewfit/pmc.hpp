#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "skewfit/likelihood.hpp"
#include "skewfit/model.hpp"
#include "skewfit/rng.hpp"

namespace skewfit {

// One PMC particle: a point in the augmented space (theta, z, v) together
// with the log proposal density accumulated over the components drawn in the
// current iteration and its importance weight.
struct Particle {
  ThetaParams theta;
  LatentState lat;
  double log_q = 0.0;
  double log_unnorm_weight = 0.0;
  double norm_weight = 0.0;
};

struct PopulationState {
  std::vector<Particle> particles;
  int iteration = 0;
  double entropy = 0.0;
  double log_sum_unnorm = 0.0;
};

struct IterationDiagnostics {
  int t = 0;
  double entropy = 0.0;
  double log_sum_unnorm = 0.0;
  double v_accept_rate = 1.0;
  long zero_weight_count = 0;
};

// Coefficients of the v_i full conditional
//   pi(v | ...) = k_v^{-1} v^{c-1} exp(-a v - b sqrt(v)),  v > 0
// with a = (nu + (y-xi)' G^{-1} (y-xi))/2, b = -(y-xi)' G^{-1} psi |z|,
// c = (nu + p)/2.
struct VCondCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

// Rejection envelope for the v_i sampler: instrumental W = R^2 with
// R ~ Gamma(alpha_v, beta_v), dominance constant M and the log normalizing
// constant of the target.
struct RejectionEnvelope {
  double alpha_v = 0.0;
  double beta_v = 0.0;
  double bound = 1.0;
  double log_kv = 0.0;
};

// ------------------------------------------------------------- initialization

// Initial particles mimic the stochastic representation: nu from the prior
// grid, v from Gamma(nu/2, nu/2), z standard normal, then (xi, psi, G) as the
// complete-ML estimates given those latents. Degenerate draws are retried up
// to 100 times per particle.
PopulationState initialize_population(const Dataset& data,
                                      const ModelSpec& spec,
                                      const PriorConfig& cfg, int n_particles,
                                      std::uint64_t seed);

// ------------------------------------------------------------------ proposals

// (m_i, v_theta) of the z_i full conditional:
// v_theta = (1 + psi' G^{-1} psi)^{-1}, m_i = v_theta sqrt(v_i) psi' G^{-1} (y_i - xi)
std::pair<double, double> zcond_params(const ThetaParams& theta, double v_i,
                                       const Eigen::VectorXd& y_i);

struct ZProposal {
  Eigen::VectorXd z;
  double log_q = 0.0;
};

// z_i = S_i * Z_i^+ with Z_i^+ truncated normal on (0, inf) and S_i a fair
// sign; q(z_i) = TN(|z_i|; m_i, v_theta) / 2.
ZProposal propose_z(const ThetaParams& theta, const Eigen::VectorXd& v,
                    const Dataset& data, RngStream& rng);

struct VectorProposal {
  Eigen::VectorXd value;
  double log_q = 0.0;
};

// xi full conditional: N_p((sum v_i y_i - psi sum sqrt(v_i)|z_i|)/sum v_i, G/sum v_i)
VectorProposal propose_xi(const ThetaParams& theta, const LatentState& lat,
                          const Dataset& data, RngStream& rng);

// psi proposal (likelihood factor only):
// N_p(sum |z_i| sqrt(v_i) (y_i - xi) / sum z_i^2, G / sum z_i^2). Draws may
// fall outside the ellipsoid constraint; they are kept, the prior zeroes them.
VectorProposal propose_psi(const ThetaParams& theta, const LatentState& lat,
                           const Dataset& data, RngStream& rng);

struct GProposal {
  SpdMatrix value;
  double log_q = 0.0;
};

// G proposal: IW(n - p - 1, sum v_i eps_i eps_i') with eps from the current
// (xi, psi, z, v); requires n > 2p.
GProposal propose_g(const ThetaParams& theta, const LatentState& lat,
                    const Dataset& data, RngStream& rng);

struct NuProposal {
  double value = 0.0;
  double log_q = 0.0;
};

// Exact categorical draw from the nu full conditional over the grid,
// pi(nu | v) ~ (nu/2)^{n nu/2} Gamma(nu/2)^{-n} (prod v)^{nu/2-1} e^{-nu sum v / 2}.
NuProposal propose_nu(const Eigen::VectorXd& v, const std::vector<double>& grid,
                      RngStream& rng);

// --------------------------------------------------------- v rejection sampler

VCondCoeffs vcond_coeffs(const ThetaParams& theta, double z_i,
                         const Eigen::VectorXd& y_i);

// KL-optimal rate of the instrumental density given alpha_v = 2c:
// beta* = (b + sqrt(b^2 + 8a(2c+1))) / 2
double beta_star(const VCondCoeffs& c);

// Closed-form KL(f || pi_v) as a function of the instrumental rate beta, used
// to validate beta_star.
double kl_divergence(const VCondCoeffs& c, double beta);

// log k_v via the parabolic-cylinder closed form; falls back to adaptive
// quadrature when the series evaluation does not converge.
double kv_constant(const VCondCoeffs& c);

RejectionEnvelope envelope(const VCondCoeffs& c);

struct VDraw {
  double value = 0.0;
  double log_density = 0.0;
  int trials = 0;
};

// Exact draw from the v_i full conditional by rejection; also returns the
// normalized log density at the draw.
VDraw sample_v(const VCondCoeffs& c, const RejectionEnvelope& env,
               RngStream& rng);

struct VProposal {
  Eigen::VectorXd v;
  double log_q = 0.0;
  long trials = 0;
};

// Per-observation loop of the rejection sampler (uses theta.nu as the
// already-proposed degrees of freedom).
VProposal propose_v(const ThetaParams& theta, const Eigen::VectorXd& z,
                    const Dataset& data, RngStream& rng);

namespace detail {
// quadrature fallback for log k_v, exposed for white-box tests
double log_kv_quadrature(double a, double b, double c);
}  // namespace detail

// ------------------------------------------------------------------ weighting

// log zeta_j = augmented log likelihood + log prior - log q; normalizes by
// log-sum-exp. Throws DegeneratePopulationError when every weight vanishes.
void compute_weights(PopulationState& pop, const Dataset& data,
                     const ModelSpec& spec, const PriorConfig& cfg);

// Shannon entropy of the normalized weights, with 0 log 0 = 0.
double entropy(const PopulationState& pop);

// Multinomial resampling; resampled particles carry uniform weights.
void resample(PopulationState& pop, RngStream& rng);

// Marginal likelihood from the iteration history of (H, log sum of
// unnormalized weights):  p(y) = sum_t H_t sum_j zeta_jt / (N sum_t H_t).
double marginal_likelihood(
    const std::vector<std::pair<double, double>>& history, int n_particles);

// ------------------------------------------------------------------ driver

struct FitResult {
  ModelSpec spec;
  int n_particles = 0;
  int n_iterations = 0;
  std::uint64_t seed = 0;
  double log_marginal = 0.0;

  // H-weighted posterior means in the sampling parameterization
  Eigen::VectorXd xi, psi;
  Eigen::MatrixXd g;
  // derived from the mean theta
  Eigen::MatrixXd sigma;
  Eigen::VectorXd delta, alpha;

  // nu posterior over the grid (empty for light-tailed models)
  std::vector<double> nu_grid, nu_pmf;
  double nu_mean = 0.0;

  std::vector<IterationDiagnostics> diagnostics;
};

// Full PMC run: T iterations of propose (in the order nu, v, z, xi, psi, G,
// each conditional on the latest values; fixed components skipped), weight,
// record, resample. Final estimates are entropy-weighted means over
// iterations. `threads` = 0 picks the hardware concurrency; results do not
// depend on the thread count.
FitResult run_pmc(const Dataset& data, const ModelSpec& spec,
                  const PriorConfig& cfg, int n_particles, int n_iterations,
                  std::uint64_t seed, int threads = 0);

}  // namespace skewfit
