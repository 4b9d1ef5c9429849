#include "skewfit/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>

#include "skewfit/csv.hpp"
#include "skewfit/pmc.hpp"
#include "skewfit/simulate.hpp"

namespace skewfit {

namespace {

using nlohmann::json;

const std::vector<std::string> kAllModels = {"normal", "t", "sn", "st"};

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

AlphaParams params_from_simulate(const SimulateConfig& sim,
                                 const ModelSpec& spec) {
  if (sim.sigma.empty()) throw ParseError("simulate config: missing sigma");
  const long p = static_cast<long>(sim.sigma.size());
  Eigen::MatrixXd sigma(p, p);
  for (long i = 0; i < p; ++i) {
    if (static_cast<long>(sim.sigma[i].size()) != p)
      throw ParseError("simulate config: sigma must be square");
    for (long j = 0; j < p; ++j) sigma(i, j) = sim.sigma[i][j];
  }
  if (static_cast<long>(sim.xi.size()) != p)
    throw ParseError("simulate config: xi length mismatch");
  Eigen::VectorXd xi(p), alpha = Eigen::VectorXd::Zero(p);
  for (long j = 0; j < p; ++j) xi(j) = sim.xi[j];
  if (spec.skewed) {
    if (static_cast<long>(sim.alpha.size()) != p)
      throw ParseError("simulate config: alpha length mismatch");
    for (long j = 0; j < p; ++j) alpha(j) = sim.alpha[j];
  }
  return AlphaParams{std::move(xi), std::move(alpha), SpdMatrix(sigma),
                     spec.heavy_tailed ? sim.nu : 0.0};
}

// posterior model probabilities from log marginals, uniform model prior
json model_probabilities(const std::vector<std::string>& names,
                         const std::vector<double>& log_marginals) {
  double max_lm = -std::numeric_limits<double>::infinity();
  for (double lm : log_marginals) max_lm = std::max(max_lm, lm);
  double total = 0.0;
  for (double lm : log_marginals) total += std::exp(lm - max_lm);
  json probs;
  for (std::size_t m = 0; m < names.size(); ++m)
    probs[names[m]] = std::exp(log_marginals[m] - max_lm) / total;
  return probs;
}

}  // namespace

Dataset simulate_from_config(const SimulateConfig& sim, std::uint64_t seed) {
  const ModelSpec spec = ModelSpec::from_name(sim.model);
  const AlphaParams params = params_from_simulate(sim, spec);
  RngStream rng(seed, 0);
  return simulate_dataset(spec, params, sim.n, rng);
}

FitReport run_fit(const Dataset& data, const RunConfig& cfg) {
  const ModelSpec spec = ModelSpec::from_name(cfg.model);
  const auto start = std::chrono::steady_clock::now();
  const FitResult result = run_pmc(data, spec, cfg.prior, cfg.particles,
                                   cfg.iterations, cfg.seed, cfg.threads);
  return make_fit_report(result, data.n(), data.p(), elapsed_seconds(start));
}

json run_compare(const Dataset& data, const RunConfig& cfg) {
  std::vector<std::string> ok_names;
  std::vector<double> ok_lm;
  json fits;
  json warnings = json::array();
  for (std::size_t m = 0; m < kAllModels.size(); ++m) {
    RunConfig sub = cfg;
    sub.model = kAllModels[m];
    sub.seed = derive_seed(cfg.seed, m, 0);
    try {
      const FitReport rep = run_fit(data, sub);
      fits[kAllModels[m]] = to_json(rep);
      ok_names.push_back(kAllModels[m]);
      ok_lm.push_back(rep.log_marginal);
    } catch (const std::exception& e) {
      warnings.push_back("model " + kAllModels[m] + " failed: " + e.what());
      fits[kAllModels[m]] = nullptr;
    }
  }
  if (ok_names.empty())
    throw NumericError("run_compare: every model failed");

  json out;
  out["models"] = kAllModels;
  json lm;
  for (std::size_t m = 0; m < ok_names.size(); ++m) lm[ok_names[m]] = ok_lm[m];
  out["log_marginal_likelihoods"] = lm;
  out["posterior_probabilities"] = model_probabilities(ok_names, ok_lm);
  out["fits"] = fits;
  out["warnings"] = warnings;
  return out;
}

json run_study(const RunConfig& cfg) {
  if (!cfg.has_simulate)
    throw ParseError("study: config needs a 'simulate' block with true params");
  if (cfg.replications < 1) throw ParseError("study: replications >= 1");

  json generators = json::array();
  for (std::size_t g = 0; g < kAllModels.size(); ++g) {
    const std::string& gen_name = kAllModels[g];
    const ModelSpec gen_spec = ModelSpec::from_name(gen_name);
    SimulateConfig sim = cfg.simulate;
    sim.model = gen_name;

    json rows = json::array();
    int top_true = 0, completed = 0;
    for (int r = 0; r < cfg.replications; ++r) {
      json row;
      row["generator"] = gen_name;
      row["replication"] = r;
      try {
        const std::uint64_t sim_seed = derive_seed(cfg.seed, 0x5100 + g, r);
        const AlphaParams truth = params_from_simulate(sim, gen_spec);
        RngStream rng(sim_seed, 0);
        const Dataset data = simulate_dataset(gen_spec, truth, sim.n, rng);

        std::vector<std::string> ok_names;
        std::vector<double> ok_lm;
        for (std::size_t m = 0; m < kAllModels.size(); ++m) {
          RunConfig sub = cfg;
          sub.model = kAllModels[m];
          sub.seed = derive_seed(cfg.seed, 0xF100 + g * 8 + m, r);
          try {
            const FitReport rep = run_fit(data, sub);
            ok_names.push_back(kAllModels[m]);
            ok_lm.push_back(rep.log_marginal);
          } catch (const std::exception& e) {
            row["warnings"].push_back("model " + kAllModels[m] +
                                      " failed: " + e.what());
          }
        }
        if (ok_names.empty()) throw NumericError("every model failed");
        const json probs = model_probabilities(ok_names, ok_lm);
        row["posterior_probabilities"] = probs;
        std::string top;
        double best = -1.0;
        for (const auto& [name, prob] : probs.items()) {
          if (prob.get<double>() > best) {
            best = prob.get<double>();
            top = name;
          }
        }
        row["top_model"] = top;
        ++completed;
        if (top == gen_name) ++top_true;
      } catch (const std::exception& e) {
        row["error"] = e.what();
      }
      rows.push_back(std::move(row));
    }
    // stacked-bar convention: order rows by decreasing true-model probability
    std::sort(rows.begin(), rows.end(), [&](const json& a, const json& b) {
      auto prob_of = [&](const json& r) {
        if (!r.contains("posterior_probabilities")) return -1.0;
        const auto& probs = r.at("posterior_probabilities");
        return probs.contains(gen_name) ? probs.at(gen_name).get<double>()
                                        : 0.0;
      };
      return prob_of(a) > prob_of(b);
    });
    json block;
    block["generator"] = gen_name;
    block["replications"] = cfg.replications;
    block["completed"] = completed;
    block["true_model_top_ranked"] = top_true;
    block["rows"] = std::move(rows);
    generators.push_back(std::move(block));
  }

  json out;
  out["settings"] = {{"particles", cfg.particles},
                     {"iterations", cfg.iterations},
                     {"seed", cfg.seed},
                     {"replications", cfg.replications},
                     {"n", cfg.simulate.n}};
  out["generators"] = std::move(generators);
  return out;
}

int simulate_command(const RunConfig& cfg) {
  if (!cfg.has_simulate) {
    std::cerr << "simulate: config needs a 'simulate' block\n";
    return 2;
  }
  if (cfg.output_path.empty()) {
    std::cerr << "simulate: no output path (config 'output' or --out)\n";
    return 2;
  }
  const Dataset data = simulate_from_config(cfg.simulate, cfg.seed);
  std::vector<std::string> names(data.p());
  for (int j = 0; j < data.p(); ++j) names[j] = "y" + std::to_string(j + 1);
  write_csv(cfg.output_path, data, names);
  std::cout << "wrote " << data.n() << "x" << data.p() << " dataset ("
            << cfg.simulate.model << ") to " << cfg.output_path << "\n";
  return 0;
}

int fit_command(const RunConfig& cfg) {
  const Dataset data = load_csv(cfg.input_path);
  const auto pre =
      validate_posterior_preconditions(data.n(), data.p(), cfg.prior);
  if (!pre.ok) {
    std::cerr << "fit: " << pre.reason << "\n";
    return 3;
  }
  const FitReport rep = run_fit(data, cfg);
  if (!cfg.output_path.empty()) write_json_file(cfg.output_path, to_json(rep));
  std::cout << "model " << rep.model << ": log p(y) = " << rep.log_marginal
            << "  (wall " << rep.wall_seconds << " s)\n";
  return 0;
}

int compare_command(const RunConfig& cfg) {
  const Dataset data = load_csv(cfg.input_path);
  const auto pre =
      validate_posterior_preconditions(data.n(), data.p(), cfg.prior);
  if (!pre.ok) {
    std::cerr << "compare: " << pre.reason << "\n";
    return 3;
  }
  const auto start = std::chrono::steady_clock::now();
  const json out = run_compare(data, cfg);
  if (!cfg.output_path.empty()) write_json_file(cfg.output_path, out);
  std::cout << "posterior model probabilities:\n";
  for (const auto& [name, prob] :
       out.at("posterior_probabilities").items())
    std::cout << "  " << name << "  " << prob.get<double>() << "\n";
  for (const auto& w : out.at("warnings"))
    std::cerr << "warning: " << w.get<std::string>() << "\n";
  std::cout << "(wall " << elapsed_seconds(start) << " s)\n";
  return 0;
}

int study_command(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const json out = run_study(cfg);
  if (!cfg.output_path.empty()) write_json_file(cfg.output_path, out);
  for (const auto& block : out.at("generators")) {
    std::cout << block.at("generator").get<std::string>() << ": true model top "
              << block.at("true_model_top_ranked").get<int>() << "/"
              << block.at("completed").get<int>() << " replications\n";
  }
  std::cout << "(wall " << elapsed_seconds(start) << " s)\n";
  return 0;
}

}  // namespace skewfit
