#include "skewfit/simulate.hpp"

#include <cmath>

#include "skewfit/distributions.hpp"

namespace skewfit {

Dataset simulate_dataset(const ModelSpec& spec, const AlphaParams& params,
                         long n, RngStream& rng) {
  if (n < 1) throw DomainError("simulate_dataset: n >= 1 required");
  const int p = params.sigma.dim();
  if (params.xi.size() != p || params.alpha.size() != p)
    throw DomainError("simulate_dataset: dimension mismatch");
  if (spec.heavy_tailed && !(params.nu > 0.0))
    throw ConstraintError("simulate_dataset: heavy-tailed model needs nu > 0");

  const SpdMatrix omega_corr = correlation_from_sigma(params.sigma);
  const Eigen::VectorXd w = omega_diag(params.sigma);
  const Eigen::VectorXd delta =
      spec.skewed ? delta_from_alpha(params.alpha, omega_corr)
                  : Eigen::VectorXd::Zero(p);

  // joint covariance of (Z, X)
  Eigen::MatrixXd joint(p + 1, p + 1);
  joint(0, 0) = 1.0;
  joint.block(0, 1, 1, p) = delta.transpose();
  joint.block(1, 0, p, 1) = delta;
  joint.block(1, 1, p, p) = omega_corr.mat();
  SpdMatrix joint_spd = [&] {
    try {
      return SpdMatrix(joint);
    } catch (const MatrixError&) {
      throw ConstraintError(
          "simulate_dataset: delta violates the ellipsoid constraint");
    }
  }();

  Eigen::MatrixXd rows(n, p);
  Eigen::VectorXd std_normal(p + 1);
  for (long i = 0; i < n; ++i) {
    for (int j = 0; j <= p; ++j) std_normal(j) = rng.normal();
    const Eigen::VectorXd zx = joint_spd.chol() * std_normal;
    const double sign = zx(0) < 0.0 ? -1.0 : 1.0;
    const double v = spec.heavy_tailed
                         ? gamma_sample(0.5 * params.nu, 0.5 * params.nu, rng)
                         : 1.0;
    const double scale = sign / std::sqrt(v);
    for (int j = 0; j < p; ++j)
      rows(i, j) = params.xi(j) + w(j) * zx(j + 1) * scale;
  }
  return Dataset(std::move(rows));
}

}  // namespace skewfit
