#include "skewfit/report.hpp"

#include <cmath>
#include <fstream>

namespace skewfit {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> rows(m.rows());
  for (long i = 0; i < m.rows(); ++i) {
    rows[i].resize(m.cols());
    for (long j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  }
  return rows;
}

}  // namespace

FitReport make_fit_report(const FitResult& result, long n, int p,
                          double wall_seconds) {
  FitReport rep;
  rep.model = result.spec.name();
  rep.log_marginal = result.log_marginal;
  rep.xi = to_std(result.xi);
  rep.psi = to_std(result.psi);
  rep.delta = to_std(result.delta);
  rep.alpha = to_std(result.alpha);
  rep.g = to_rows(result.g);
  rep.sigma = to_rows(result.sigma);
  rep.nu_mean = result.nu_mean;
  rep.nu_grid = result.nu_grid;
  rep.nu_pmf = result.nu_pmf;
  rep.iterations = result.diagnostics;
  rep.n = n;
  rep.p = p;
  rep.particles = result.n_particles;
  rep.pmc_iterations = result.n_iterations;
  rep.seed = result.seed;
  rep.wall_seconds = wall_seconds;
  return rep;
}

nlohmann::json to_json(const FitReport& report) {
  nlohmann::json j;
  j["model"] = report.model;
  j["log_marginal_likelihood"] = report.log_marginal;
  nlohmann::json means;
  means["xi"] = report.xi;
  means["psi"] = report.psi;
  means["delta"] = report.delta;
  means["alpha"] = report.alpha;
  means["g"] = report.g;
  means["sigma"] = report.sigma;
  j["posterior_means"] = means;
  if (!report.nu_grid.empty()) {
    j["nu"] = {{"mean", report.nu_mean},
               {"grid", report.nu_grid},
               {"pmf", report.nu_pmf}};
  } else {
    j["nu"] = nullptr;
  }
  nlohmann::json iters = nlohmann::json::array();
  for (const auto& it : report.iterations) {
    iters.push_back({{"t", it.t},
                     {"entropy", it.entropy},
                     {"log_sum_unnorm_weights", it.log_sum_unnorm},
                     {"v_accept_rate", it.v_accept_rate},
                     {"zero_weight_particles", it.zero_weight_count}});
  }
  j["iterations"] = iters;
  j["settings"] = {{"n", report.n},
                   {"p", report.p},
                   {"particles", report.particles},
                   {"pmc_iterations", report.pmc_iterations},
                   {"seed", report.seed}};
  return j;
}

FitReport fit_report_from_json(const nlohmann::json& j) {
  FitReport rep;
  rep.model = j.at("model").get<std::string>();
  rep.log_marginal = j.at("log_marginal_likelihood").get<double>();
  const auto& means = j.at("posterior_means");
  rep.xi = means.at("xi").get<std::vector<double>>();
  rep.psi = means.at("psi").get<std::vector<double>>();
  rep.delta = means.at("delta").get<std::vector<double>>();
  rep.alpha = means.at("alpha").get<std::vector<double>>();
  rep.g = means.at("g").get<std::vector<std::vector<double>>>();
  rep.sigma = means.at("sigma").get<std::vector<std::vector<double>>>();
  if (!j.at("nu").is_null()) {
    rep.nu_mean = j.at("nu").at("mean").get<double>();
    rep.nu_grid = j.at("nu").at("grid").get<std::vector<double>>();
    rep.nu_pmf = j.at("nu").at("pmf").get<std::vector<double>>();
  } else {
    rep.nu_mean = std::numeric_limits<double>::quiet_NaN();
  }
  for (const auto& it : j.at("iterations")) {
    IterationDiagnostics d;
    d.t = it.at("t").get<int>();
    d.entropy = it.at("entropy").get<double>();
    d.log_sum_unnorm = it.at("log_sum_unnorm_weights").get<double>();
    d.v_accept_rate = it.at("v_accept_rate").get<double>();
    d.zero_weight_count = it.at("zero_weight_particles").get<long>();
    rep.iterations.push_back(d);
  }
  const auto& s = j.at("settings");
  rep.n = s.at("n").get<long>();
  rep.p = s.at("p").get<int>();
  rep.particles = s.at("particles").get<int>();
  rep.pmc_iterations = s.at("pmc_iterations").get<int>();
  rep.seed = s.at("seed").get<std::uint64_t>();
  return rep;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace skewfit
