#include "skewfit/distributions.hpp"

#include <cmath>

#include "skewfit/specfun.hpp"

namespace skewfit {

namespace {
constexpr double kLn2Pi = 1.8378770664093454836;
}

double mvn_logpdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                  const SpdMatrix& cov) {
  if (x.size() != mean.size() || x.size() != cov.dim())
    throw DomainError("mvn_logpdf: dimension mismatch");
  const double q = cov.quad_form(x - mean);
  return -0.5 * (cov.dim() * kLn2Pi + cov.log_det() + q);
}

Eigen::VectorXd mvn_sample(const Eigen::VectorXd& mean, const SpdMatrix& cov,
                           RngStream& rng) {
  if (mean.size() != cov.dim())
    throw DomainError("mvn_sample: dimension mismatch");
  Eigen::VectorXd z(cov.dim());
  for (int i = 0; i < cov.dim(); ++i) z(i) = rng.normal();
  return mean + cov.chol() * z;
}

double mvt_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& loc,
                  const SpdMatrix& scale, double dof) {
  if (!(dof > 0.0)) throw DomainError("mvt_logpdf: requires dof > 0");
  if (y.size() != loc.size() || y.size() != scale.dim())
    throw DomainError("mvt_logpdf: dimension mismatch");
  const int p = scale.dim();
  const double q = scale.quad_form(y - loc);
  return specfun::ln_gamma(0.5 * (dof + p)) - specfun::ln_gamma(0.5 * dof) -
         0.5 * scale.log_det() - 0.5 * p * std::log(M_PI * dof) -
         0.5 * (dof + p) * std::log1p(q / dof);
}

double gamma_sample(double shape, double rate, RngStream& rng) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw DomainError("gamma_sample: requires shape, rate > 0");
  if (shape < 1.0) {
    // boost via Gamma(shape+1) and a uniform power
    const double g = gamma_sample(shape + 1.0, 1.0, rng);
    return g * std::pow(rng.uniform(), 1.0 / shape) / rate;
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v / rate;
  }
}

double gamma_logpdf(double v, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw DomainError("gamma_logpdf: requires shape, rate > 0");
  if (!(v > 0.0)) return -std::numeric_limits<double>::infinity();
  return shape * std::log(rate) - specfun::ln_gamma(shape) +
         (shape - 1.0) * std::log(v) - rate * v;
}

SpdMatrix invwishart_sample(double dof, const SpdMatrix& scale, RngStream& rng) {
  const int p = scale.dim();
  if (!(dof > p - 1))
    throw DomainError("invwishart_sample: requires dof > p - 1");
  // X^{-1} ~ Wishart(dof, scale^{-1}); Bartlett construction
  const SpdMatrix scale_inv(scale.inverse());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    a(i, i) = std::sqrt(gamma_sample(0.5 * (dof - i), 0.5, rng));
    for (int j = 0; j < i; ++j) a(i, j) = rng.normal();
  }
  const Eigen::MatrixXd m = scale_inv.chol() * a;  // lower triangular
  const Eigen::MatrixXd m_inv =
      m.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(p, p));
  Eigen::MatrixXd x = m_inv.transpose() * m_inv;
  return SpdMatrix(0.5 * (x + x.transpose()));
}

double invwishart_logpdf(const SpdMatrix& x, double dof,
                         const Eigen::MatrixXd& scale) {
  const int p = x.dim();
  const bool scale_is_zero = scale.size() == 0 || scale.norm() == 0.0;
  if (!scale_is_zero && (scale.rows() != p || scale.cols() != p))
    throw DomainError("invwishart_logpdf: dimension mismatch");

  double kernel = -0.5 * (dof + p + 1) * x.log_det();
  if (!scale_is_zero) kernel -= 0.5 * x.solve(scale).trace();

  if (scale_is_zero) return kernel;  // improper objective case: bare kernel

  if (!(dof > p - 1))
    throw DomainError("invwishart_logpdf: normalizable only for dof > p - 1");
  const SpdMatrix scale_spd(scale);
  const double norm = 0.5 * dof * scale_spd.log_det() -
                      0.5 * dof * p * std::log(2.0) -
                      specfun::ln_gamma_p(0.5 * dof, p);
  return norm + kernel;
}

double truncnorm_sample_positive(double mean, double var, RngStream& rng) {
  if (!(var > 0.0)) throw DomainError("truncnorm_sample_positive: var > 0");
  const double sd = std::sqrt(var);
  const double a = -mean / sd;  // lower bound after standardizing
  double z;
  if (a <= 0.3) {
    do {
      z = rng.normal();
    } while (z <= a);
  } else {
    // Robert's exponential envelope, optimal rate
    const double lambda = 0.5 * (a + std::sqrt(a * a + 4.0));
    for (;;) {
      z = a + rng.exponential() / lambda;
      const double r = z - lambda;
      if (std::log(rng.uniform()) <= -0.5 * r * r) break;
    }
  }
  return mean + sd * z;
}

double truncnorm_logpdf_positive(double x, double mean, double var) {
  if (!(var > 0.0)) throw DomainError("truncnorm_logpdf_positive: var > 0");
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  const double sd = std::sqrt(var);
  const double zs = (x - mean) / sd;
  return -0.5 * zs * zs - 0.5 * kLn2Pi - std::log(sd) -
         specfun::norm_logcdf(mean / sd);
}

double sn_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& loc,
                 const Eigen::VectorXd& alpha, const SpdMatrix& scale) {
  if (y.size() != loc.size() || y.size() != alpha.size() ||
      y.size() != scale.dim())
    throw DomainError("sn_logpdf: dimension mismatch");
  double t = 0.0;
  for (int j = 0; j < scale.dim(); ++j)
    t += alpha(j) * (y(j) - loc(j)) / std::sqrt(scale(j, j));
  return std::log(2.0) + mvn_logpdf(y, loc, scale) + specfun::norm_logcdf(t);
}

}  // namespace skewfit
