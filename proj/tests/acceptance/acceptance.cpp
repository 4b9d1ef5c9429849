// Acceptance suite: end-to-end checks of the statistical pipeline, one
// pass/fail line per criterion. Heavier than the unit tests; the full run
// takes tens of minutes at desk scale on one core.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "skewfit/commands.hpp"
#include "skewfit/csv.hpp"
#include "skewfit/distributions.hpp"
#include "skewfit/pmc.hpp"
#include "skewfit/simulate.hpp"
#include "skewfit/specfun.hpp"
#include "support/oracles.hpp"

using namespace skewfit;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> xs) {
  VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

struct Outcome {
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

int g_failures = 0;

void report(int id, const std::string& title,
            const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const char* tag = out.skipped ? "SKIP" : (out.pass ? "PASS" : "FAIL");
  if (!out.pass && !out.skipped) ++g_failures;
  std::ostringstream line;
  line << "[" << tag << "] criterion " << id << ": " << title;
  if (!out.detail.empty()) line << "  (" << out.detail << ")";
  line << "  [" << std::fixed << secs << " s]";
  std::cout << line.str() << std::endl;
}

// ---------------------------------------------------------------- criterion 1

Outcome density_correctness() {
  // p = 1: unit mass by adaptive quadrature over the (alpha, nu) grid
  double worst = 0.0;
  for (double alpha : {-5.0, 0.0, 3.0}) {
    for (double nu : {1.0, 4.0, 30.0}) {
      const AlphaParams ap{vec({0.0}), vec({alpha}), SpdMatrix::identity(1),
                           nu};
      auto pdf = [&](double x) { return std::exp(st_logpdf(vec({x}), ap)); };
      worst = std::max(worst,
                       std::fabs(oracles::integrate_line(pdf, 1e-11) - 1.0));
    }
  }
  if (worst > 1e-8)
    return {false, false, "p=1 mass error " + std::to_string(worst)};

  // p = 2: a million representation draws scored against the density; the
  // sample mean of f(Y) has to match the quadrature value of int f^2 within
  // four standard errors
  MatrixXd sigma(2, 2);
  sigma << 2.0, 0.7, 0.7, 1.5;
  const AlphaParams ap{vec({0.5, -1.0}), vec({3.0, -2.0}), SpdMatrix(sigma),
                       6.0};
  RngStream rng(2024, 0);
  const long m = 1000000;
  const Dataset draws = simulate_dataset(ModelSpec::skew_t(), ap, m, rng);
  double s1 = 0.0, s2 = 0.0;
  for (long i = 0; i < m; ++i) {
    const double f = std::exp(st_logpdf(draws.row(i), ap));
    s1 += f;
    s2 += f * f;
  }
  const double mean_f = s1 / m;
  const double se = std::sqrt((s2 / m - mean_f * mean_f) / m);
  auto inner = [&](double x0) {
    auto f = [&](double x1) {
      return std::exp(2.0 * st_logpdf(vec({x0, x1}), ap));
    };
    return oracles::integrate_line(f, 1e-10);
  };
  const double int_f2 = oracles::integrate_line(inner, 1e-8);
  const double z = std::fabs(mean_f - int_f2) / se;
  std::ostringstream detail;
  detail << "p=1 mass err " << worst << ", p=2 z-score " << z;
  return {z <= 4.0, false, detail.str()};
}

// ---------------------------------------------------------------- criterion 2

Outcome representation_matches_density() {
  const AlphaParams ap{vec({0.0}), vec({3.0}), SpdMatrix::identity(1), 5.0};
  RngStream rng(2025, 0);
  const Dataset d = simulate_dataset(ModelSpec::skew_t(), ap, 100000, rng);
  std::vector<double> draws(d.n());
  for (long i = 0; i < d.n(); ++i) draws[i] = d.y(i, 0);
  auto pdf = [&](double x) { return std::exp(st_logpdf(vec({x}), ap)); };
  const double ks = oracles::ks_vs_density(draws, pdf, -60.0);
  return {ks < 0.01, false, "KS " + std::to_string(ks)};
}

// ----------------------------------------------------- criteria 3-6 (k_v etc.)

const std::vector<double> kGridA = {0.5, 1.0, 5.0};
const std::vector<double> kGridB = {-5.0, -1.0, 0.0, 1.0, 5.0};
const std::vector<double> kGridC = {1.0, 2.5, 6.0};

// independent quadrature oracle for k_v, on the r = sqrt(v) scale,
// integrated in two pieces split at the mode
double log_kv_oracle(double a, double b, double c) {
  const double r_star =
      (-b + std::sqrt(b * b + 8.0 * a * std::max(2.0 * c - 1.0, 0.5))) /
      (4.0 * a);
  auto log_f = [&](double r) {
    return (2.0 * c - 1.0) * std::log(r) - a * r * r - b * r;
  };
  const double peak = log_f(r_star);
  auto f = [&](double r) { return r > 0.0 ? std::exp(log_f(r) - peak) : 0.0; };
  double hi = r_star + 1.0;
  while (log_f(hi) - peak > -80.0) hi *= 1.7;
  return std::log(2.0) + peak +
         std::log(oracles::integrate(f, 0.0, r_star, 1e-13) +
                  oracles::integrate(f, r_star, hi, 1e-13));
}

Outcome kv_closed_form() {
  double worst = 0.0;
  for (double a : kGridA)
    for (double b : kGridB)
      for (double c : kGridC) {
        const double closed = kv_constant({a, b, c});
        const double oracle = log_kv_oracle(a, b, c);
        // relative error of k_v itself
        worst = std::max(worst, std::fabs(std::expm1(closed - oracle)));
      }
  std::ostringstream detail;
  detail << "worst rel err " << worst;
  return {worst <= 1e-8, false, detail.str()};
}

Outcome kl_optimum() {
  for (double a : kGridA)
    for (double b : kGridB)
      for (double c : kGridC) {
        const VCondCoeffs coef{a, b, c};
        const double bs = beta_star(coef);
        const double at_opt = kl_divergence(coef, bs);
        for (int k = -50; k <= 50; ++k) {
          if (k == 0) continue;
          if (kl_divergence(coef, bs * (1.0 + 0.01 * k)) < at_opt - 1e-12)
            return {false, false, "beta* is not the argmin"};
        }
        const double h = 1e-6 * bs;
        const double dkl =
            (kl_divergence(coef, bs + h) - kl_divergence(coef, bs - h)) /
            (2.0 * h);
        if (std::fabs(dkl) > 1e-6 * std::max(1.0, std::fabs(at_opt)))
          return {false, false, "gradient " + std::to_string(dkl)};
      }
  return {true, false, "45 grid points, 100 surrounding values each"};
}

Outcome envelope_dominance() {
  double worst_ratio = 0.0;
  double worst_rate_err = 0.0;
  for (double a : kGridA)
    for (double b : kGridB)
      for (double c : kGridC) {
        const VCondCoeffs coef{a, b, c};
        const auto env = envelope(coef);
        for (int k = 0; k < 10000; ++k) {
          const double v = std::exp(-14.0 + 28.0 * k / 9999.0);
          const double lpi = -env.log_kv + (c - 1.0) * std::log(v) - a * v -
                             b * std::sqrt(v);
          const double lf = env.alpha_v * std::log(env.beta_v) -
                            std::log(2.0) - specfun::ln_gamma(env.alpha_v) +
                            (c - 1.0) * std::log(v) -
                            env.beta_v * std::sqrt(v);
          worst_ratio =
              std::max(worst_ratio, std::exp(lpi - lf - std::log(env.bound)));
        }
        RngStream rng(777, static_cast<std::uint64_t>((a + 10.0) * 1000 +
                                                      (b + 10.0) * 10 + c));
        long trials = 0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) trials += sample_v(coef, env, rng).trials;
        const double rate = static_cast<double>(n) / trials;
        worst_rate_err =
            std::max(worst_rate_err, std::fabs(rate * env.bound - 1.0));
      }
  std::ostringstream detail;
  detail << "max pi/(Mf) " << worst_ratio << ", worst acceptance mismatch "
         << worst_rate_err;
  return {worst_ratio <= 1.0 + 1e-10 && worst_rate_err <= 0.02, false,
          detail.str()};
}

Outcome v_sampler_distribution() {
  double worst = 0.0;
  for (double b : {-3.0, 0.0, 3.0}) {
    const VCondCoeffs coef{1.0, b, 2.5};
    const auto env = envelope(coef);
    RngStream rng(888, static_cast<std::uint64_t>(b + 5.0));
    const int n = 100000;
    std::vector<double> draws(n);
    for (int i = 0; i < n; ++i) draws[i] = sample_v(coef, env, rng).value;
    auto pdf = [&](double v) {
      return std::exp(-env.log_kv + (coef.c - 1.0) * std::log(v) - coef.a * v -
                      coef.b * std::sqrt(v));
    };
    worst = std::max(worst, oracles::ks_vs_density(draws, pdf, 0.0));
  }
  return {worst < 0.01, false, "worst KS " + std::to_string(worst)};
}

// ---------------------------------------------------------------- criterion 7

Outcome cml_stationarity() {
  RngStream rng(999, 0);
  double worst_grad = 0.0, worst_resid = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const int p = rep % 3 == 0 ? 1 : (rep % 3 == 1 ? 2 : 4);
    const long n = 30 + 5 * p;
    MatrixXd y(n, p);
    for (long i = 0; i < n; ++i)
      for (int j = 0; j < p; ++j) y(i, j) = 2.0 * rng.normal() + 0.5 * j;
    const Dataset data{y};
    LatentState lat{VectorXd(n), VectorXd(n)};
    const double nu = 6.0;
    for (long i = 0; i < n; ++i) {
      lat.z(i) = rng.normal();
      lat.v(i) = gamma_sample(0.5 * nu, 0.5 * nu, rng);
    }
    const CmlEstimates est = cml_estimates(data, lat);
    const double at_opt =
        augmented_loglik(data, ThetaParams{est.xi, est.psi, est.g, nu}, lat);
    const double scale = std::max(1.0, std::fabs(at_opt));

    const double h = 1e-5;
    auto value = [&](const VectorXd& xi, const VectorXd& psi,
                     const MatrixXd& g) {
      return augmented_loglik(data, ThetaParams{xi, psi, SpdMatrix(g), nu},
                              lat);
    };
    double max_grad = 0.0;
    for (int j = 0; j < p; ++j) {
      VectorXd u = est.xi, d = est.xi;
      u(j) += h;
      d(j) -= h;
      max_grad = std::max(max_grad, std::fabs(value(u, est.psi, est.g.mat()) -
                                              value(d, est.psi, est.g.mat())) /
                                        (2.0 * h));
      VectorXd pu = est.psi, pd = est.psi;
      pu(j) += h;
      pd(j) -= h;
      max_grad = std::max(max_grad, std::fabs(value(est.xi, pu, est.g.mat()) -
                                              value(est.xi, pd, est.g.mat())) /
                                        (2.0 * h));
    }
    for (int a = 0; a < p; ++a)
      for (int b = 0; b <= a; ++b) {
        MatrixXd gu = est.g.mat(), gd = est.g.mat();
        gu(a, b) += h;
        gu(b, a) = gu(a, b);
        gd(a, b) -= h;
        gd(b, a) = gd(a, b);
        max_grad = std::max(max_grad, std::fabs(value(est.xi, est.psi, gu) -
                                                value(est.xi, est.psi, gd)) /
                                          (2.0 * h));
      }
    worst_grad = std::max(worst_grad, max_grad / scale);

    const double root = solve_nu_equation_continuous(lat.v);
    if (std::isfinite(root)) {
      double sv = 0.0, slv = 0.0;
      for (long i = 0; i < n; ++i) {
        sv += lat.v(i);
        slv += std::log(lat.v(i));
      }
      const double rhs = (sv - slv) / n - 1.0;
      worst_resid =
          std::max(worst_resid, std::fabs(std::log(0.5 * root) -
                                          specfun::digamma(0.5 * root) - rhs));
    }
  }
  std::ostringstream detail;
  detail << "worst rel gradient " << worst_grad << ", worst nu residual "
         << worst_resid;
  return {worst_grad <= 1e-5 && worst_resid <= 1e-10, false, detail.str()};
}

// ---------------------------------------------------------------- criterion 8

Outcome augmented_marginalization() {
  RngStream rng(1010, 0);
  double worst = 0.0;
  const auto grid = PriorConfig::default_nu_grid();
  for (int rep = 0; rep < 10; ++rep) {
    const double xi = 2.0 * rng.uniform() - 1.0;
    const double psi = 3.0 * rng.uniform() - 1.5;
    const double g = 0.5 + 1.5 * rng.uniform();
    const double nu = grid[static_cast<std::size_t>(rng.uniform() * 8) + 1];
    const double y0 = xi + 2.5 * (rng.uniform() - 0.5);
    Dataset data{MatrixXd::Constant(1, 1, y0)};
    const ThetaParams tp{vec({xi}), vec({psi}),
                         SpdMatrix(MatrixXd::Constant(1, 1, g)), nu};
    auto joint = [&](double z, double v) {
      LatentState lat{VectorXd::Constant(1, z), VectorXd::Constant(1, v)};
      return std::exp(augmented_loglik(data, tp, lat));
    };
    auto inner = [&](double v) {
      auto f = [&](double z) { return joint(z, v) + joint(-z, v); };
      return oracles::integrate_upper(f, 0.0, 1e-9);
    };
    const double marginal = oracles::integrate_upper(inner, 0.0, 1e-8);
    const double want = std::exp(st_logpdf(vec({y0}), alpha_from_theta(tp)));
    worst = std::max(worst, std::fabs(marginal / want - 1.0));
  }
  return {worst <= 1e-5, false, "worst rel err " + std::to_string(worst)};
}

// ---------------------------------------------------------------- criterion 9

Outcome conjugate_oracle_fit() {
  const long n = 500;
  const int p = 2;
  MatrixXd sigma(2, 2);
  sigma << 2.0, 0.6, 0.6, 1.2;
  const AlphaParams truth{vec({1.0, -0.5}), VectorXd::Zero(2),
                          SpdMatrix(sigma), 0.0};
  RngStream rng(1111, 0);
  const Dataset data = simulate_dataset(ModelSpec::normal(), truth, n, rng);

  PriorConfig cfg;
  const FitResult fit =
      run_pmc(data, ModelSpec::normal(), cfg, 4000, 5, 271828, 0);

  // analytic posterior under the flat-xi, |Sigma|^{-(p+1)/2} prior
  const VectorXd ybar = data.y.colwise().mean().transpose();
  MatrixXd s = MatrixXd::Zero(p, p);
  for (long i = 0; i < n; ++i) {
    const VectorXd c = data.row(i) - ybar;
    s += c * c.transpose();
  }
  auto ln_gamma_p_local = [](double a, int dim) {
    double v = 0.25 * dim * (dim - 1) * std::log(M_PI);
    for (int j = 1; j <= dim; ++j) v += std::lgamma(a + 0.5 * (1 - j));
    return v;
  };
  const double analytic_lml = -0.5 * (n - 1) * p * std::log(M_PI) -
                              0.5 * p * std::log(static_cast<double>(n)) +
                              ln_gamma_p_local(0.5 * (n - 1), p) -
                              0.5 * (n - 1) * std::log(s.determinant());

  double worst_dev = 0.0;
  for (int j = 0; j < p; ++j) {
    const double sd = std::sqrt(s(j, j) / (n * (n - p - 2.0)));
    worst_dev = std::max(worst_dev, std::fabs(fit.xi(j) - ybar(j)) / sd);
  }
  const double lml_gap = std::fabs(fit.log_marginal - analytic_lml);
  std::ostringstream detail;
  detail << "xi deviation " << worst_dev << " posterior SDs, log p(y) gap "
         << lml_gap << " nats";
  return {worst_dev <= 3.0 && lml_gap <= 0.5, false, detail.str()};
}

// --------------------------------------------------------------- criterion 10

Outcome desk_scale_study() {
  const int reps = 10;
  const long n = 200;
  const int n_particles = 4000, n_iter = 5;
  MatrixXd sigma(2, 2);
  sigma << 7.0, 2.0, 2.0, 8.0;
  const VectorXd xi = vec({5.0, 9.0});
  const VectorXd alpha = vec({4.0, 4.0});
  const double nu = 10.0;
  const std::vector<std::string> models = {"normal", "t", "sn", "st"};

  std::map<std::string, std::map<std::string, int>> top_counts;
  for (std::size_t g = 0; g < models.size(); ++g) {
    const ModelSpec gen = ModelSpec::from_name(models[g]);
    for (int r = 0; r < reps; ++r) {
      const AlphaParams truth{xi,
                              gen.skewed ? alpha : VectorXd::Zero(2).eval(),
                              SpdMatrix(sigma), gen.heavy_tailed ? nu : 0.0};
      RngStream sim_rng(derive_seed(314159, 0x5100 + g, r), 0);
      const Dataset data = simulate_dataset(gen, truth, n, sim_rng);

      PriorConfig cfg;
      std::string best_model;
      double best_lml = -std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < models.size(); ++m) {
        const FitResult fit =
            run_pmc(data, ModelSpec::from_name(models[m]), cfg, n_particles,
                    n_iter, derive_seed(314159, 0xF100 + g * 8 + m, r), 0);
        if (fit.log_marginal > best_lml) {
          best_lml = fit.log_marginal;
          best_model = models[m];
        }
      }
      top_counts[models[g]][best_model]++;
    }
  }

  const int t_true = top_counts["t"]["t"];
  const int normal_ok =
      top_counts["normal"]["normal"] + top_counts["normal"]["t"];
  const int st_ok = top_counts["st"]["st"] + top_counts["st"]["sn"];
  const int sn_ok = top_counts["sn"]["sn"] + top_counts["sn"]["normal"];
  std::ostringstream detail;
  detail << "t->t " << t_true << "/10 (need 8), normal->{normal,t} "
         << normal_ok << "/10 (need 8), st->{st,sn} " << st_ok
         << "/10 (need 7), sn->{sn,normal} " << sn_ok << "/10 (need 7)";
  return {t_true >= 8 && normal_ok >= 8 && st_ok >= 7 && sn_ok >= 7, false,
          detail.str()};
}

// --------------------------------------------------------------- criterion 11

Outcome wine_analysis() {
  const char* path = std::getenv("SKEWFIT_WINE_CSV");
  if (path == nullptr || std::string(path).empty())
    return {true, true,
            "set SKEWFIT_WINE_CSV to the 71x3 Grignolino CSV (chloride, "
            "glycerol, magnesium) to run"};
  const Dataset data = load_csv(path);
  RunConfig cfg;
  cfg.particles = 20000;
  cfg.iterations = 6;
  cfg.seed = 57721;
  const nlohmann::json out = run_compare(data, cfg);
  const auto& probs = out.at("posterior_probabilities");
  const double p_st = probs.at("st").get<double>();
  const double p_light =
      probs.at("normal").get<double>() + probs.at("sn").get<double>();
  const double nu_mean =
      out.at("fits").at("st").at("nu").at("mean").get<double>();
  std::ostringstream detail;
  detail << "P(st|y) " << p_st << ", nu mean " << nu_mean
         << ", P(normal)+P(sn) " << p_light;
  return {p_st > 0.5 && nu_mean >= 2.5 && nu_mean <= 4.0 && p_light < 1e-6,
          false, detail.str()};
}

// --------------------------------------------------------------- criterion 12

Outcome determinism() {
  MatrixXd sigma(2, 2);
  sigma << 1.5, 0.4, 0.4, 1.0;
  RunConfig cfg;
  cfg.seed = 424242;
  cfg.particles = 300;
  cfg.iterations = 2;
  cfg.has_simulate = true;
  cfg.simulate.model = "st";
  cfg.simulate.n = 80;
  cfg.simulate.xi = {0.0, 1.0};
  cfg.simulate.sigma = {{1.5, 0.4}, {0.4, 1.0}};
  cfg.simulate.alpha = {3.0, -1.0};
  cfg.simulate.nu = 8.0;

  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  cfg.output_path = "/tmp/skewfit_acc_sim1.csv";
  if (simulate_command(cfg) != 0) return {false, false, "simulate failed"};
  cfg.output_path = "/tmp/skewfit_acc_sim2.csv";
  if (simulate_command(cfg) != 0) return {false, false, "simulate failed"};
  if (slurp("/tmp/skewfit_acc_sim1.csv") != slurp("/tmp/skewfit_acc_sim2.csv"))
    return {false, false, "simulate outputs differ"};

  cfg.input_path = "/tmp/skewfit_acc_sim1.csv";
  cfg.model = "st";
  cfg.threads = 1;
  cfg.output_path = "/tmp/skewfit_acc_fit1.json";
  if (fit_command(cfg) != 0) return {false, false, "fit failed"};
  cfg.threads = 4;
  cfg.output_path = "/tmp/skewfit_acc_fit2.json";
  if (fit_command(cfg) != 0) return {false, false, "fit failed"};
  if (slurp("/tmp/skewfit_acc_fit1.json") !=
      slurp("/tmp/skewfit_acc_fit2.json"))
    return {false, false, "fit reports differ across thread counts"};

  cfg.threads = 2;
  cfg.output_path = "/tmp/skewfit_acc_cmp1.json";
  if (compare_command(cfg) != 0) return {false, false, "compare failed"};
  cfg.output_path = "/tmp/skewfit_acc_cmp2.json";
  if (compare_command(cfg) != 0) return {false, false, "compare failed"};
  if (slurp("/tmp/skewfit_acc_cmp1.json") !=
      slurp("/tmp/skewfit_acc_cmp2.json"))
    return {false, false, "compare reports differ"};

  return {true, false, "simulate, fit and compare byte-identical"};
}

}  // namespace

int main() {
  std::cout << "skewfit acceptance suite" << std::endl;
  report(1, "skew-t density integrates to one (p=1 grid, p=2 Monte Carlo)",
         density_correctness);
  report(2, "stochastic representation matches the density (KS)",
         representation_matches_density);
  report(3, "k_v closed form vs quadrature oracle on the 45-point grid",
         kv_closed_form);
  report(4, "beta* minimizes the closed-form KL divergence", kl_optimum);
  report(5, "rejection envelope dominance and acceptance rate",
         envelope_dominance);
  report(6, "v sampler distribution in all three tail regimes",
         v_sampler_distribution);
  report(7, "complete-ML stationarity and nu-equation residual",
         cml_stationarity);
  report(8, "augmented model marginalizes to the observed density",
         augmented_marginalization);
  report(9, "normal-model fit matches the conjugate analytic posterior",
         conjugate_oracle_fit);
  report(10, "desk-scale model-selection study (10 reps per generator)",
         desk_scale_study);
  report(11, "Grignolino wine analysis (user-supplied data)", wine_analysis);
  report(12, "byte-identical reports under fixed seeds and any thread count",
         determinism);
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed (or skipped where conditional)"
            << std::endl;
  return 0;
}
