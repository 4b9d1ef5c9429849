#include "skewfit/model.hpp"

#include <cmath>
#include <limits>

#include "skewfit/distributions.hpp"
#include "skewfit/specfun.hpp"

namespace skewfit {

ModelSpec ModelSpec::from_name(const std::string& name) {
  if (name == "normal") return normal();
  if (name == "t") return student_t();
  if (name == "sn") return skew_normal();
  if (name == "st") return skew_t();
  throw DomainError("unknown model name: " + name +
                    " (expected normal, t, sn or st)");
}

std::string ModelSpec::name() const {
  if (skewed) return heavy_tailed ? "st" : "sn";
  return heavy_tailed ? "t" : "normal";
}

std::vector<double> PriorConfig::default_nu_grid() {
  return {1,  2,  3,  4,  5,  6,  7,  8,  9,  10,
          12, 14, 17, 20, 25, 30, 40, 55, 75, 100};
}

Eigen::MatrixXd PriorConfig::iw_scale_or_zero(int p) const {
  if (iw_scale.size() == 0) return Eigen::MatrixXd::Zero(p, p);
  return iw_scale;
}

void PriorConfig::validate() const {
  if (nu_grid.empty()) throw DomainError("PriorConfig: empty nu grid");
  double prev = 0.0;
  for (double v : nu_grid) {
    if (!std::isfinite(v) || v <= prev)
      throw DomainError(
          "PriorConfig: nu grid must be positive, finite and strictly "
          "increasing");
    prev = v;
  }
  if (iw_scale.size() != 0 && iw_scale.rows() != iw_scale.cols())
    throw DomainError("PriorConfig: iw_scale must be square");
}

Eigen::VectorXd omega_diag(const SpdMatrix& sigma) {
  Eigen::VectorXd w(sigma.dim());
  for (int j = 0; j < sigma.dim(); ++j) w(j) = std::sqrt(sigma(j, j));
  return w;
}

SpdMatrix correlation_from_sigma(const SpdMatrix& sigma) {
  const Eigen::VectorXd w = omega_diag(sigma);
  Eigen::MatrixXd corr(sigma.dim(), sigma.dim());
  for (int i = 0; i < sigma.dim(); ++i)
    for (int j = 0; j < sigma.dim(); ++j)
      corr(i, j) = sigma(i, j) / (w(i) * w(j));
  return SpdMatrix(corr);
}

namespace {

void require_correlation(const SpdMatrix& omega_corr) {
  for (int j = 0; j < omega_corr.dim(); ++j)
    if (std::fabs(omega_corr(j, j) - 1.0) > 1e-8)
      throw DomainError("expected a correlation matrix (unit diagonal)");
}

}  // namespace

Eigen::VectorXd delta_from_alpha(const Eigen::VectorXd& alpha,
                                 const SpdMatrix& omega_corr) {
  if (alpha.size() != omega_corr.dim())
    throw DomainError("delta_from_alpha: dimension mismatch");
  require_correlation(omega_corr);
  const Eigen::VectorXd oa = omega_corr.mat() * alpha;
  return oa / std::sqrt(1.0 + alpha.dot(oa));
}

Eigen::VectorXd alpha_from_delta(const Eigen::VectorXd& delta,
                                 const SpdMatrix& omega_corr) {
  if (delta.size() != omega_corr.dim())
    throw DomainError("alpha_from_delta: dimension mismatch");
  require_correlation(omega_corr);
  const double q = omega_corr.quad_form(delta);
  if (!(q < 1.0))
    throw ConstraintError("alpha_from_delta: delta' Omega^{-1} delta >= 1");
  return omega_corr.solve(delta) / std::sqrt(1.0 - q);
}

ThetaParams theta_from_delta(const DeltaParams& dp) {
  const Eigen::VectorXd w = omega_diag(dp.sigma);
  const Eigen::VectorXd psi = w.cwiseProduct(dp.delta);
  const Eigen::MatrixXd g = dp.sigma.mat() - psi * psi.transpose();
  try {
    return ThetaParams{dp.xi, psi, SpdMatrix(g), dp.nu};
  } catch (const MatrixError&) {
    throw ConstraintError(
        "theta_from_delta: Sigma - psi psi' is not positive definite "
        "(delta outside the admissible ellipsoid)");
  }
}

DeltaParams delta_from_theta(const ThetaParams& tp) {
  const Eigen::MatrixXd sig = tp.g.mat() + tp.psi * tp.psi.transpose();
  SpdMatrix sigma(sig);
  const Eigen::VectorXd w = omega_diag(sigma);
  const Eigen::VectorXd delta = tp.psi.cwiseQuotient(w);
  return DeltaParams{tp.xi, delta, std::move(sigma), tp.nu};
}

AlphaParams alpha_from_theta(const ThetaParams& tp) {
  DeltaParams dp = delta_from_theta(tp);
  const SpdMatrix omega_corr = correlation_from_sigma(dp.sigma);
  Eigen::VectorXd alpha = alpha_from_delta(dp.delta, omega_corr);
  return AlphaParams{dp.xi, std::move(alpha), std::move(dp.sigma), dp.nu};
}

DeltaParams delta_params_from_alpha(const AlphaParams& ap) {
  const SpdMatrix omega_corr = correlation_from_sigma(ap.sigma);
  Eigen::VectorXd delta = delta_from_alpha(ap.alpha, omega_corr);
  return DeltaParams{ap.xi, std::move(delta), ap.sigma, ap.nu};
}

double jacobian_logdet(const ThetaParams& tp) {
  double s = 0.0;
  for (int j = 0; j < tp.g.dim(); ++j)
    s -= 0.5 * std::log(tp.g(j, j) + tp.psi(j) * tp.psi(j));
  return s;
}

double log_prior_delta_given_sigma(const Eigen::VectorXd& delta,
                                   const SpdMatrix& sigma) {
  const int p = sigma.dim();
  const SpdMatrix omega_corr = correlation_from_sigma(sigma);
  if (!(omega_corr.quad_form(delta) < 1.0))
    return -std::numeric_limits<double>::infinity();
  // volume of the ellipsoid: pi^{p/2} sqrt(|Omega|) / Gamma(p/2 + 1)
  return -(0.5 * p * std::log(M_PI) + 0.5 * omega_corr.log_det() -
           specfun::ln_gamma(0.5 * p + 1.0));
}

double log_prior(const ThetaParams& tp, const ModelSpec& spec,
                 const PriorConfig& cfg) {
  const int p = tp.g.dim();
  double lp = 0.0;  // flat prior on xi
  try {
    const DeltaParams dp = delta_from_theta(tp);
    lp += invwishart_logpdf(dp.sigma, cfg.iw_dof, cfg.iw_scale_or_zero(p));
    if (spec.skewed) {
      const double dlp = log_prior_delta_given_sigma(dp.delta, dp.sigma);
      if (!std::isfinite(dlp)) return dlp;
      lp += dlp + jacobian_logdet(tp);
    }
    if (spec.heavy_tailed)
      lp -= std::log(static_cast<double>(cfg.nu_grid.size()));
  } catch (const MatrixError&) {
    return -std::numeric_limits<double>::infinity();
  }
  return lp;
}

PrecheckResult validate_posterior_preconditions(long n, int p,
                                                const PriorConfig& cfg) {
  if (n < p + 1)
    return {false, "n >= p+1 violated (n=" + std::to_string(n) +
                       ", p=" + std::to_string(p) + ")"};
  if (cfg.nu_grid.empty()) return {false, "improper nu prior: empty grid"};
  for (double v : cfg.nu_grid) {
    if (!std::isfinite(v) || v <= 0.0)
      return {false, "improper nu prior: grid values must be finite and > 0"};
  }
  for (std::size_t k = 1; k < cfg.nu_grid.size(); ++k)
    if (cfg.nu_grid[k] <= cfg.nu_grid[k - 1])
      return {false, "improper nu prior: grid must be strictly increasing"};
  return {true, ""};
}

}  // namespace skewfit
