#include "skewfit/likelihood.hpp"

#include <cmath>
#include <limits>

#include "skewfit/distributions.hpp"
#include "skewfit/specfun.hpp"

namespace skewfit {

namespace {
constexpr double kLn2Pi = 1.8378770664093454836;
}

Dataset::Dataset(Eigen::MatrixXd rows) : y(std::move(rows)) {
  if (y.rows() < 1 || y.cols() < 1)
    throw DomainError("Dataset: needs at least one row and one column");
  if (!y.allFinite()) throw DomainError("Dataset: non-finite entries");
}

double st_logpdf(const Eigen::VectorXd& y_row, const AlphaParams& ap) {
  const int p = ap.sigma.dim();
  if (y_row.size() != p) throw DomainError("st_logpdf: dimension mismatch");
  const Eigen::VectorXd d = y_row - ap.xi;
  const double q = ap.sigma.quad_form(d);
  double t = 0.0;
  for (int j = 0; j < p; ++j) t += ap.alpha(j) * d(j) / std::sqrt(ap.sigma(j, j));
  const double arg = t * std::sqrt((ap.nu + p) / (q + ap.nu));
  const double cdf = specfun::student_t_cdf(arg, ap.nu + p);
  return std::log(2.0) + mvt_logpdf(y_row, ap.xi, ap.sigma, ap.nu) +
         std::log(cdf);
}

double observed_loglik(const Dataset& data, const ThetaParams& tp,
                       const ModelSpec& spec) {
  if (spec.skewed) {
    if (spec.heavy_tailed) {
      const AlphaParams ap = alpha_from_theta(tp);
      double s = 0.0;
      for (long i = 0; i < data.n(); ++i) s += st_logpdf(data.row(i), ap);
      return s;
    }
    const AlphaParams ap = alpha_from_theta(tp);
    double s = 0.0;
    for (long i = 0; i < data.n(); ++i)
      s += sn_logpdf(data.row(i), ap.xi, ap.alpha, ap.sigma);
    return s;
  }
  if (tp.psi.norm() != 0.0)
    throw ConstraintError("observed_loglik: psi must be 0 for symmetric models");
  const DeltaParams dp = delta_from_theta(tp);
  double s = 0.0;
  for (long i = 0; i < data.n(); ++i) {
    s += spec.heavy_tailed ? mvt_logpdf(data.row(i), dp.xi, dp.sigma, dp.nu)
                           : mvn_logpdf(data.row(i), dp.xi, dp.sigma);
  }
  return s;
}

namespace {

// observation block: sum_i log phi_p(eps_i; G / v_i)
double obs_block(const Dataset& data, const ThetaParams& tp,
                 const LatentState& lat) {
  const long n = data.n();
  const int p = data.p();
  double s = -0.5 * n * (p * kLn2Pi + tp.g.log_det());
  for (long i = 0; i < n; ++i) {
    const Eigen::VectorXd eps =
        data.row(i) - tp.xi -
        tp.psi * (std::fabs(lat.z(i)) / std::sqrt(lat.v(i)));
    s += 0.5 * p * std::log(lat.v(i)) - 0.5 * lat.v(i) * tp.g.quad_form(eps);
  }
  return s;
}

// z block: sum_i log phi(z_i)
double z_block(const LatentState& lat) {
  const long n = lat.z.size();
  return -0.5 * n * kLn2Pi - 0.5 * lat.z.squaredNorm();
}

// v block: sum_i log Gamma(v_i; nu/2, nu/2)
double v_block(const LatentState& lat, double nu) {
  const long n = lat.v.size();
  double sum_log_v = 0.0, sum_v = 0.0;
  for (long i = 0; i < n; ++i) {
    sum_log_v += std::log(lat.v(i));
    sum_v += lat.v(i);
  }
  const double h = 0.5 * nu;
  return n * (h * std::log(h) - specfun::ln_gamma(h)) +
         (h - 1.0) * sum_log_v - h * sum_v;
}

void check_latents(const Dataset& data, const LatentState& lat) {
  if (lat.z.size() != data.n() || lat.v.size() != data.n())
    throw DomainError("latent state length does not match the dataset");
  for (long i = 0; i < lat.v.size(); ++i)
    if (!(lat.v(i) > 0.0)) throw DomainError("latent v must be positive");
}

}  // namespace

double augmented_loglik(const Dataset& data, const ThetaParams& tp,
                        const LatentState& lat) {
  return augmented_loglik(data, tp, lat, ModelSpec::skew_t());
}

double augmented_loglik(const Dataset& data, const ThetaParams& tp,
                        const LatentState& lat, const ModelSpec& spec) {
  check_latents(data, lat);
  double s = obs_block(data, tp, lat) + z_block(lat);
  if (spec.heavy_tailed) s += v_block(lat, tp.nu);
  return s;
}

CmlEstimates cml_estimates(const Dataset& data, const LatentState& lat) {
  return cml_estimates(data, lat, false);
}

CmlEstimates cml_estimates(const Dataset& data, const LatentState& lat,
                           bool force_psi_zero) {
  check_latents(data, lat);
  const long n = data.n();
  const int p = data.p();
  if (n < p + 2) throw PreconditionError("cml_estimates: requires n >= p+2");

  double sum_v = 0.0, sum_z2 = 0.0, sum_u = 0.0;  // u_i = |z_i| sqrt(v_i)
  Eigen::VectorXd sum_vy = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd sum_uy = Eigen::VectorXd::Zero(p);
  for (long i = 0; i < n; ++i) {
    const double vi = lat.v(i);
    const double ui = std::fabs(lat.z(i)) * std::sqrt(vi);
    sum_v += vi;
    sum_z2 += lat.z(i) * lat.z(i);
    sum_u += ui;
    sum_vy += vi * data.row(i);
    sum_uy += ui * data.row(i);
  }

  Eigen::VectorXd psi = Eigen::VectorXd::Zero(p);
  const double denom = sum_z2 * sum_v - sum_u * sum_u;
  if (!force_psi_zero && denom > 1e-12 * sum_z2 * sum_v) {
    psi = (sum_v * sum_uy - sum_u * sum_vy) / denom;
  }
  const Eigen::VectorXd xi = (sum_vy - psi * sum_u) / sum_v;

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(p, p);
  for (long i = 0; i < n; ++i) {
    const Eigen::VectorXd eps =
        data.row(i) - xi - psi * (std::fabs(lat.z(i)) / std::sqrt(lat.v(i)));
    g += lat.v(i) * eps * eps.transpose();
  }
  g /= static_cast<double>(n);
  g = 0.5 * (g + g.transpose()).eval();  // floating-point drift
  try {
    return CmlEstimates{xi, psi, SpdMatrix(g)};
  } catch (const MatrixError&) {
    throw DegenerateLatentsError("cml_estimates: G-hat is singular");
  }
}

double solve_nu_equation_continuous(const Eigen::VectorXd& v) {
  const long n = v.size();
  if (n < 1) throw DomainError("solve_nu_equation: empty v");
  double sum_v = 0.0, sum_log_v = 0.0;
  for (long i = 0; i < n; ++i) {
    if (!(v(i) > 0.0)) throw DomainError("solve_nu_equation: v must be > 0");
    sum_v += v(i);
    sum_log_v += std::log(v(i));
  }
  // per-observation form: log(nu/2) - psi(nu/2) = mean(v) - mean(log v) - 1
  const double rhs = (sum_v - sum_log_v) / n - 1.0;
  if (!(rhs > 0.0)) return std::numeric_limits<double>::infinity();

  auto f = [&](double nu) {
    return std::log(0.5 * nu) - specfun::digamma(0.5 * nu) - rhs;
  };
  double lo = 1e-3, hi = 1e6;
  if (f(lo) <= 0.0) return lo;
  if (f(hi) >= 0.0) return std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double solve_nu_equation(const Eigen::VectorXd& v,
                         const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("solve_nu_equation: empty grid");
  const double root = solve_nu_equation_continuous(v);
  if (std::isinf(root)) return grid.back();
  double best = grid.front();
  for (double g : grid)
    if (std::fabs(g - root) < std::fabs(best - root)) best = g;
  return best;
}

}  // namespace skewfit
