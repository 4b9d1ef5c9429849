#include "skewfit/pmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewfit/detail/quadrature.hpp"
#include "skewfit/distributions.hpp"
#include "skewfit/parallel.hpp"
#include "skewfit/specfun.hpp"

namespace skewfit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// stream-id layout: [0, N) initialization, [tN, (t+1)N) proposals of
// iteration t, high bit + t for the resampling stream
std::uint64_t particle_stream(int t, long j, long n) {
  return static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(n) +
         static_cast<std::uint64_t>(j);
}

std::uint64_t population_stream(int t) {
  return 0x8000000000000000ULL + static_cast<std::uint64_t>(t);
}

}  // namespace

PopulationState initialize_population(const Dataset& data,
                                      const ModelSpec& spec,
                                      const PriorConfig& cfg, int n_particles,
                                      std::uint64_t seed) {
  const auto pre = validate_posterior_preconditions(data.n(), data.p(), cfg);
  if (!pre.ok) throw PreconditionError(pre.reason);
  if (n_particles < 2)
    throw DomainError("initialize_population: need at least 2 particles");

  const long n = data.n();
  const std::size_t grid_size = cfg.nu_grid.size();

  PopulationState pop;
  pop.iteration = 0;
  pop.particles.reserve(n_particles);
  for (int j = 0; j < n_particles; ++j) {
    RngStream rng(seed, particle_stream(0, j, n_particles));
    for (int attempt = 0;; ++attempt) {
      try {
        double nu = std::numeric_limits<double>::infinity();
        LatentState lat{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(n)};
        if (spec.heavy_tailed) {
          const auto k = std::min<std::size_t>(
              grid_size - 1,
              static_cast<std::size_t>(rng.uniform() * grid_size));
          nu = cfg.nu_grid[k];
          for (long i = 0; i < n; ++i)
            lat.v(i) = gamma_sample(0.5 * nu, 0.5 * nu, rng);
        }
        for (long i = 0; i < n; ++i) lat.z(i) = rng.normal();
        CmlEstimates cml = cml_estimates(data, lat, !spec.skewed);
        Particle pt{ThetaParams{std::move(cml.xi), std::move(cml.psi),
                                std::move(cml.g), nu},
                    std::move(lat), 0.0, 0.0, 1.0 / n_particles};
        pop.particles.push_back(std::move(pt));
        break;
      } catch (const DegenerateLatentsError&) {
        if (attempt >= 99) throw;
      }
    }
  }
  return pop;
}

std::pair<double, double> zcond_params(const ThetaParams& theta, double v_i,
                                       const Eigen::VectorXd& y_i) {
  const Eigen::VectorXd ginv_psi = theta.g.solve(theta.psi);
  const double v_theta = 1.0 / (1.0 + theta.psi.dot(ginv_psi));
  const double m_i = v_theta * std::sqrt(v_i) * ginv_psi.dot(y_i - theta.xi);
  return {m_i, v_theta};
}

ZProposal propose_z(const ThetaParams& theta, const Eigen::VectorXd& v,
                    const Dataset& data, RngStream& rng) {
  const long n = data.n();
  if (v.size() != n) throw DomainError("propose_z: latent length mismatch");
  const Eigen::VectorXd ginv_psi = theta.g.solve(theta.psi);
  const double v_theta = 1.0 / (1.0 + theta.psi.dot(ginv_psi));

  ZProposal out{Eigen::VectorXd(n), 0.0};
  for (long i = 0; i < n; ++i) {
    const double m_i =
        v_theta * std::sqrt(v(i)) * ginv_psi.dot(data.row(i) - theta.xi);
    const double magnitude = truncnorm_sample_positive(m_i, v_theta, rng);
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    out.z(i) = sign * magnitude;
    out.log_q += std::log(0.5) +
                 truncnorm_logpdf_positive(magnitude, m_i, v_theta);
  }
  return out;
}

VectorProposal propose_xi(const ThetaParams& theta, const LatentState& lat,
                          const Dataset& data, RngStream& rng) {
  const long n = data.n();
  const int p = data.p();
  double sum_v = 0.0, sum_u = 0.0;
  Eigen::VectorXd sum_vy = Eigen::VectorXd::Zero(p);
  for (long i = 0; i < n; ++i) {
    sum_v += lat.v(i);
    sum_u += std::fabs(lat.z(i)) * std::sqrt(lat.v(i));
    sum_vy += lat.v(i) * data.row(i);
  }
  if (!(sum_v > 0.0)) throw DegenerateLatentsError("propose_xi: sum v <= 0");
  const Eigen::VectorXd mean = (sum_vy - theta.psi * sum_u) / sum_v;
  const SpdMatrix cov(theta.g.mat() / sum_v);
  Eigen::VectorXd draw = mvn_sample(mean, cov, rng);
  const double lq = mvn_logpdf(draw, mean, cov);
  return {std::move(draw), lq};
}

VectorProposal propose_psi(const ThetaParams& theta, const LatentState& lat,
                           const Dataset& data, RngStream& rng) {
  const long n = data.n();
  const int p = data.p();
  double sum_z2 = 0.0;
  Eigen::VectorXd sum_uy = Eigen::VectorXd::Zero(p);
  for (long i = 0; i < n; ++i) {
    sum_z2 += lat.z(i) * lat.z(i);
    sum_uy += std::fabs(lat.z(i)) * std::sqrt(lat.v(i)) *
              (data.row(i) - theta.xi);
  }
  if (!(sum_z2 > 0.0))
    throw DegenerateLatentsError("propose_psi: sum z^2 is zero");
  const Eigen::VectorXd mean = sum_uy / sum_z2;
  const SpdMatrix cov(theta.g.mat() / sum_z2);
  Eigen::VectorXd draw = mvn_sample(mean, cov, rng);
  const double lq = mvn_logpdf(draw, mean, cov);
  return {std::move(draw), lq};
}

GProposal propose_g(const ThetaParams& theta, const LatentState& lat,
                    const Dataset& data, RngStream& rng) {
  const long n = data.n();
  const int p = data.p();
  if (!(n - p - 1 > p - 1))
    throw PreconditionError("propose_g: requires n > 2p");
  Eigen::MatrixXd lam = Eigen::MatrixXd::Zero(p, p);
  for (long i = 0; i < n; ++i) {
    const Eigen::VectorXd eps =
        data.row(i) - theta.xi -
        theta.psi * (std::fabs(lat.z(i)) / std::sqrt(lat.v(i)));
    lam += lat.v(i) * eps * eps.transpose();
  }
  lam = 0.5 * (lam + lam.transpose()).eval();
  const SpdMatrix lam_spd(lam);
  const double dof = static_cast<double>(n - p - 1);
  SpdMatrix draw = invwishart_sample(dof, lam_spd, rng);
  const double lq = invwishart_logpdf(draw, dof, lam);
  return {std::move(draw), lq};
}

NuProposal propose_nu(const Eigen::VectorXd& v, const std::vector<double>& grid,
                      RngStream& rng) {
  if (grid.empty()) throw DomainError("propose_nu: empty grid");
  const long n = v.size();
  double sum_v = 0.0, sum_log_v = 0.0;
  for (long i = 0; i < n; ++i) {
    sum_v += v(i);
    sum_log_v += std::log(v(i));
  }
  const std::size_t k_count = grid.size();
  std::vector<double> logw(k_count);
  double max_logw = kNegInf;
  for (std::size_t k = 0; k < k_count; ++k) {
    const double h = 0.5 * grid[k];
    logw[k] = n * (h * std::log(h) - specfun::ln_gamma(h)) +
              (h - 1.0) * sum_log_v - h * sum_v;
    max_logw = std::max(max_logw, logw[k]);
  }
  double total = 0.0;
  for (std::size_t k = 0; k < k_count; ++k) {
    logw[k] = std::exp(logw[k] - max_logw);
    total += logw[k];
  }
  const double u = rng.uniform() * total;
  double cum = 0.0;
  std::size_t pick = k_count - 1;
  for (std::size_t k = 0; k < k_count; ++k) {
    cum += logw[k];
    if (u <= cum) {
      pick = k;
      break;
    }
  }
  return {grid[pick], std::log(logw[pick] / total)};
}

VCondCoeffs vcond_coeffs(const ThetaParams& theta, double z_i,
                         const Eigen::VectorXd& y_i) {
  const Eigen::VectorXd d = y_i - theta.xi;
  const Eigen::VectorXd ginv_d = theta.g.solve(d);
  VCondCoeffs c;
  c.a = 0.5 * (theta.nu + d.dot(ginv_d));
  c.b = -ginv_d.dot(theta.psi) * std::fabs(z_i);
  c.c = 0.5 * (theta.nu + theta.g.dim());
  if (!(c.a > 0.0) || !(c.c > 0.0))
    throw DomainError("vcond_coeffs: invalid coefficients");
  return c;
}

double beta_star(const VCondCoeffs& c) {
  return 0.5 * (c.b + std::sqrt(c.b * c.b + 8.0 * c.a * (2.0 * c.c + 1.0)));
}

double kl_divergence(const VCondCoeffs& c, double beta) {
  if (!(beta > 0.0)) throw DomainError("kl_divergence: beta > 0 required");
  const double two_c = 2.0 * c.c;
  return kv_constant(c) + two_c * std::log(beta) - std::log(2.0) -
         specfun::ln_gamma(two_c) + two_c * (two_c + 1.0) * c.a / (beta * beta) +
         two_c * c.b / beta - two_c;
}

namespace detail {

// k_v = int_0^inf v^{c-1} e^{-a v - b sqrt(v)} dv = 2 int_0^inf r^{2c-1}
// e^{-a r^2 - b r} dr, integrated on the r scale with the peak factored out.
double log_kv_quadrature(double a, double b, double c) {
  if (!(a > 0.0) || !(c > 0.5))
    throw DomainError("log_kv_quadrature: requires a > 0 and c > 1/2");
  auto log_f = [&](double r) {
    return (2.0 * c - 1.0) * std::log(r) - a * r * r - b * r;
  };
  // mode of the r-scale integrand: 2a r^2 + b r - (2c-1) = 0
  const double r_star =
      (-b + std::sqrt(b * b + 8.0 * a * (2.0 * c - 1.0))) / (4.0 * a);
  const double log_peak = log_f(r_star);
  double r_hi = r_star;
  double step = std::max(r_star, 1.0 / std::sqrt(a));
  while (log_f(r_hi + step) - log_peak > -120.0) step *= 2.0;
  while (step > 1e-3 * r_star + 1e-12) {
    if (log_f(r_hi + step) - log_peak > -120.0) r_hi += step;
    step *= 0.5;
  }
  r_hi += step;
  auto f = [&](double r) {
    return r > 0.0 ? std::exp(log_f(r) - log_peak) : 0.0;
  };
  // split at the mode so the top-level panels cannot straddle a narrow peak
  const double tol = 1e-12 * std::max(r_star, 1.0);
  const double integral = adaptive_simpson(f, 0.0, r_star, tol) +
                          adaptive_simpson(f, r_star, r_hi, tol);
  return std::log(2.0) + log_peak + std::log(integral);
}

}  // namespace detail

double kv_constant(const VCondCoeffs& c) {
  const double x = c.b * c.b / (4.0 * c.a);
  if (x <= 600.0) {
    const auto d = specfun::parabolic_cylinder_d(-2.0 * c.c,
                                                 c.b / std::sqrt(2.0 * c.a));
    if (d.converged && d.value > 0.0 && std::isfinite(d.value)) {
      const double log_kv = std::log(2.0) - c.c * std::log(2.0 * c.a) +
                            specfun::ln_gamma(2.0 * c.c) + 0.5 * x +
                            std::log(d.value);
      if (std::isfinite(log_kv)) return log_kv;
    }
  }
  // weight correctness outranks speed
  return detail::log_kv_quadrature(c.a, c.b, c.c);
}

RejectionEnvelope envelope(const VCondCoeffs& c) {
  RejectionEnvelope env;
  env.alpha_v = 2.0 * c.c;
  env.beta_v = beta_star(c);
  env.log_kv = kv_constant(c);
  const double gap = env.beta_v - c.b;  // 2 a sqrt(v*)
  const double log_m = std::log(2.0) + specfun::ln_gamma(env.alpha_v) -
                       env.alpha_v * std::log(env.beta_v) - env.log_kv +
                       gap * gap / (4.0 * c.a);
  env.bound = std::exp(log_m);
  if (!std::isfinite(env.bound))
    throw NumericError("envelope: dominance constant is not finite");
  return env;
}

VDraw sample_v(const VCondCoeffs& c, const RejectionEnvelope& env,
               RngStream& rng) {
  const double sqrt_vstar = (env.beta_v - c.b) / (2.0 * c.a);
  for (int trial = 1; trial <= 1000000; ++trial) {
    const double r = gamma_sample(env.alpha_v, env.beta_v, rng);
    // pi(r^2) / (M f(r^2)) collapses to exp(-a (r - sqrt(v*))^2)
    const double gap = r - sqrt_vstar;
    if (std::log(rng.uniform()) <= -c.a * gap * gap) {
      const double w = r * r;
      const double logpdf =
          -env.log_kv + (c.c - 1.0) * std::log(w) - c.a * w - c.b * r;
      return {w, logpdf, trial};
    }
  }
  throw NumericError("sample_v: no acceptance after 1e6 trials (broken envelope)");
}

VProposal propose_v(const ThetaParams& theta, const Eigen::VectorXd& z,
                    const Dataset& data, RngStream& rng) {
  const long n = data.n();
  if (z.size() != n) throw DomainError("propose_v: latent length mismatch");
  VProposal out{Eigen::VectorXd(n), 0.0, 0};
  for (long i = 0; i < n; ++i) {
    const VCondCoeffs c = vcond_coeffs(theta, z(i), data.row(i));
    const RejectionEnvelope env = envelope(c);
    const VDraw draw = sample_v(c, env, rng);
    out.v(i) = draw.value;
    out.log_q += draw.log_density;
    out.trials += draw.trials;
  }
  return out;
}

void compute_weights(PopulationState& pop, const Dataset& data,
                     const ModelSpec& spec, const PriorConfig& cfg) {
  double max_lw = kNegInf;
  for (Particle& pt : pop.particles) {
    const double target = augmented_loglik(data, pt.theta, pt.lat, spec) +
                          log_prior(pt.theta, spec, cfg);
    pt.log_unnorm_weight = target - pt.log_q;
    if (std::isnan(pt.log_unnorm_weight)) pt.log_unnorm_weight = kNegInf;
    max_lw = std::max(max_lw, pt.log_unnorm_weight);
  }
  if (!std::isfinite(max_lw))
    throw DegeneratePopulationError("all importance weights are zero",
                                    pop.iteration);
  double total = 0.0;
  for (const Particle& pt : pop.particles)
    total += std::exp(pt.log_unnorm_weight - max_lw);
  pop.log_sum_unnorm = max_lw + std::log(total);
  for (Particle& pt : pop.particles)
    pt.norm_weight = std::exp(pt.log_unnorm_weight - pop.log_sum_unnorm);
  pop.entropy = entropy(pop);
}

double entropy(const PopulationState& pop) {
  double h = 0.0;
  for (const Particle& pt : pop.particles)
    if (pt.norm_weight > 0.0) h -= pt.norm_weight * std::log(pt.norm_weight);
  return h;
}

void resample(PopulationState& pop, RngStream& rng) {
  const std::size_t n = pop.particles.size();
  std::vector<double> cum(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += pop.particles[j].norm_weight;
    cum[j] = acc;
  }
  std::vector<Particle> next;
  next.reserve(n);
  const double uniform_w = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = rng.uniform() * acc;
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    Particle pt = pop.particles[static_cast<std::size_t>(it - cum.begin())];
    pt.log_q = 0.0;
    pt.log_unnorm_weight = std::numeric_limits<double>::quiet_NaN();
    pt.norm_weight = uniform_w;
    next.push_back(std::move(pt));
  }
  pop.particles = std::move(next);
}

double marginal_likelihood(
    const std::vector<std::pair<double, double>>& history, int n_particles) {
  if (history.empty()) throw DomainError("marginal_likelihood: empty history");
  if (n_particles < 1)
    throw DomainError("marginal_likelihood: invalid particle count");
  double sum_h = 0.0, max_term = kNegInf;
  for (const auto& [h, lsu] : history) {
    if (!(h >= 0.0) || !std::isfinite(h))
      throw DomainError("marginal_likelihood: entropy must be finite and >= 0");
    sum_h += h;
    if (h > 0.0) max_term = std::max(max_term, std::log(h) + lsu);
  }
  if (sum_h <= 0.0)
    throw DegeneratePopulationError(
        "marginal_likelihood: all iterations collapsed (sum H = 0)",
        static_cast<int>(history.size()));
  double acc = 0.0;
  for (const auto& [h, lsu] : history)
    if (h > 0.0) acc += std::exp(std::log(h) + lsu - max_term);
  return max_term + std::log(acc) - std::log(sum_h) -
         std::log(static_cast<double>(n_particles));
}

namespace {

struct IterationEstimates {
  Eigen::VectorXd xi, psi;
  Eigen::MatrixXd g;
  std::vector<double> nu_pmf;
};

std::size_t grid_index(const std::vector<double>& grid, double value) {
  const auto it = std::lower_bound(grid.begin(), grid.end(), value);
  if (it == grid.end() || *it != value)
    throw DomainError("nu value is not on the grid");
  return static_cast<std::size_t>(it - grid.begin());
}

}  // namespace

FitResult run_pmc(const Dataset& data, const ModelSpec& spec,
                  const PriorConfig& cfg, int n_particles, int n_iterations,
                  std::uint64_t seed, int threads) {
  cfg.validate();
  const auto pre = validate_posterior_preconditions(data.n(), data.p(), cfg);
  if (!pre.ok) throw PreconditionError(pre.reason);
  if (!(data.n() > 2 * data.p()))
    throw PreconditionError("run_pmc: the G proposal requires n > 2p");
  if (n_particles < 2) throw DomainError("run_pmc: need at least 2 particles");
  if (n_iterations < 1) throw DomainError("run_pmc: need at least 1 iteration");

  const long n = data.n();
  const int p = data.p();
  const std::size_t grid_size = cfg.nu_grid.size();

  PopulationState pop = initialize_population(data, spec, cfg, n_particles, seed);

  std::vector<std::pair<double, double>> history;
  std::vector<IterationEstimates> estimates;
  std::vector<IterationDiagnostics> diagnostics;
  std::vector<long> v_trials(n_particles, 0);
  std::vector<std::string> worker_errors(n_particles);

  for (int t = 1; t <= n_iterations; ++t) {
    pop.iteration = t;
    parallel_for(0, n_particles, threads, [&](long j) {
      try {
        RngStream rng(seed, particle_stream(t, j, n_particles));
        Particle& pt = pop.particles[j];
        double log_q = 0.0;
        double nu = pt.theta.nu;
        if (spec.heavy_tailed) {
          const NuProposal np = propose_nu(pt.lat.v, cfg.nu_grid, rng);
          nu = np.value;
          log_q += np.log_q;
        }
        const ThetaParams with_nu{pt.theta.xi, pt.theta.psi, pt.theta.g, nu};

        Eigen::VectorXd v = pt.lat.v;
        long trials = 0;
        if (spec.heavy_tailed) {
          VProposal vp = propose_v(with_nu, pt.lat.z, data, rng);
          v = std::move(vp.v);
          log_q += vp.log_q;
          trials = vp.trials;
        }
        v_trials[j] = trials;

        ZProposal zp = propose_z(with_nu, v, data, rng);
        LatentState lat{std::move(zp.z), std::move(v)};
        log_q += zp.log_q;

        VectorProposal xip = propose_xi(with_nu, lat, data, rng);
        log_q += xip.log_q;
        const ThetaParams with_xi{xip.value, pt.theta.psi, pt.theta.g, nu};

        Eigen::VectorXd psi = pt.theta.psi;
        if (spec.skewed) {
          VectorProposal pp = propose_psi(with_xi, lat, data, rng);
          psi = std::move(pp.value);
          log_q += pp.log_q;
        }
        const ThetaParams with_psi{xip.value, psi, pt.theta.g, nu};

        GProposal gp = propose_g(with_psi, lat, data, rng);
        log_q += gp.log_q;

        pt.theta = ThetaParams{std::move(xip.value), std::move(psi),
                               std::move(gp.value), nu};
        pt.lat = std::move(lat);
        pt.log_q = log_q;
      } catch (const std::exception& e) {
        worker_errors[j] = e.what();
      }
    });
    for (long j = 0; j < n_particles; ++j)
      if (!worker_errors[j].empty())
        throw NumericError("run_pmc: proposal failed at iteration " +
                           std::to_string(t) + ": " + worker_errors[j]);

    compute_weights(pop, data, spec, cfg);

    IterationEstimates est{Eigen::VectorXd::Zero(p), Eigen::VectorXd::Zero(p),
                           Eigen::MatrixXd::Zero(p, p),
                           std::vector<double>(grid_size, 0.0)};
    long zero_count = 0;
    long total_trials = 0;
    for (long j = 0; j < n_particles; ++j) {
      const Particle& pt = pop.particles[j];
      total_trials += v_trials[j];
      if (pt.norm_weight == 0.0) {
        ++zero_count;
        continue;
      }
      est.xi += pt.norm_weight * pt.theta.xi;
      est.psi += pt.norm_weight * pt.theta.psi;
      est.g += pt.norm_weight * pt.theta.g.mat();
      if (spec.heavy_tailed)
        est.nu_pmf[grid_index(cfg.nu_grid, pt.theta.nu)] += pt.norm_weight;
    }
    estimates.push_back(std::move(est));
    history.emplace_back(pop.entropy, pop.log_sum_unnorm);

    IterationDiagnostics diag;
    diag.t = t;
    diag.entropy = pop.entropy;
    diag.log_sum_unnorm = pop.log_sum_unnorm;
    diag.v_accept_rate =
        spec.heavy_tailed && total_trials > 0
            ? static_cast<double>(n) * n_particles / total_trials
            : 1.0;
    diag.zero_weight_count = zero_count;
    diagnostics.push_back(diag);

    RngStream pop_rng(seed, population_stream(t));
    resample(pop, pop_rng);
  }

  // entropy-weighted means across iterations
  double sum_h = 0.0;
  for (const auto& [h, lsu] : history) sum_h += h;
  if (!(sum_h > 0.0))
    throw DegeneratePopulationError("run_pmc: every iteration collapsed",
                                    n_iterations);
  FitResult res;
  res.spec = spec;
  res.n_particles = n_particles;
  res.n_iterations = n_iterations;
  res.seed = seed;
  res.xi = Eigen::VectorXd::Zero(p);
  res.psi = Eigen::VectorXd::Zero(p);
  res.g = Eigen::MatrixXd::Zero(p, p);
  std::vector<double> nu_pmf(grid_size, 0.0);
  for (std::size_t k = 0; k < history.size(); ++k) {
    const double w = history[k].first / sum_h;
    res.xi += w * estimates[k].xi;
    res.psi += w * estimates[k].psi;
    res.g += w * estimates[k].g;
    for (std::size_t g = 0; g < grid_size; ++g)
      nu_pmf[g] += w * estimates[k].nu_pmf[g];
  }

  // derived reports come from the mean theta, not from averaging constrained
  // coordinates directly
  const ThetaParams mean_theta{res.xi, res.psi, SpdMatrix(res.g), 0.0};
  const DeltaParams mean_delta = delta_from_theta(mean_theta);
  res.sigma = mean_delta.sigma.mat();
  res.delta = mean_delta.delta;
  res.alpha = spec.skewed
                  ? alpha_from_delta(mean_delta.delta,
                                     correlation_from_sigma(mean_delta.sigma))
                  : Eigen::VectorXd::Zero(p);

  if (spec.heavy_tailed) {
    double norm = 0.0, mean_nu = 0.0;
    for (double w : nu_pmf) norm += w;
    for (std::size_t g = 0; g < grid_size; ++g) {
      nu_pmf[g] /= norm;
      mean_nu += nu_pmf[g] * cfg.nu_grid[g];
    }
    res.nu_grid = cfg.nu_grid;
    res.nu_pmf = std::move(nu_pmf);
    res.nu_mean = mean_nu;
  } else {
    res.nu_mean = std::numeric_limits<double>::quiet_NaN();
  }

  res.log_marginal = marginal_likelihood(history, n_particles);
  res.diagnostics = std::move(diagnostics);
  return res;
}

}  // namespace skewfit
