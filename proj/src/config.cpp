#include "skewfit/config.hpp"

#include <json.hpp>

#include "skewfit/report.hpp"

namespace skewfit {

namespace {

using nlohmann::json;

Eigen::MatrixXd matrix_from_rows(const std::vector<std::vector<double>>& rows,
                                 const std::string& what) {
  if (rows.empty()) throw ParseError(what + ": empty matrix");
  const long p = static_cast<long>(rows.size());
  Eigen::MatrixXd m(p, p);
  for (long i = 0; i < p; ++i) {
    if (static_cast<long>(rows[i].size()) != p)
      throw ParseError(what + ": matrix must be square");
    for (long j = 0; j < p; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

SimulateConfig parse_simulate(const json& j) {
  SimulateConfig sim;
  if (j.contains("model")) sim.model = j.at("model").get<std::string>();
  ModelSpec::from_name(sim.model);  // validate early
  sim.n = j.at("n").get<long>();
  sim.xi = j.at("xi").get<std::vector<double>>();
  sim.sigma = j.at("sigma").get<std::vector<std::vector<double>>>();
  if (j.contains("alpha")) sim.alpha = j.at("alpha").get<std::vector<double>>();
  if (j.contains("nu")) sim.nu = j.at("nu").get<double>();
  return sim;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  const json j = read_json_file(path);
  RunConfig cfg;
  if (j.contains("input")) cfg.input_path = j.at("input").get<std::string>();
  if (j.contains("output")) cfg.output_path = j.at("output").get<std::string>();
  if (j.contains("model")) cfg.model = j.at("model").get<std::string>();
  ModelSpec::from_name(cfg.model);
  if (j.contains("particles")) cfg.particles = j.at("particles").get<int>();
  if (j.contains("iterations")) cfg.iterations = j.at("iterations").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  if (j.contains("replications"))
    cfg.replications = j.at("replications").get<int>();
  if (j.contains("prior")) {
    const json& pj = j.at("prior");
    if (pj.contains("iw_dof")) cfg.prior.iw_dof = pj.at("iw_dof").get<double>();
    if (pj.contains("iw_scale") && !pj.at("iw_scale").is_null())
      cfg.prior.iw_scale = matrix_from_rows(
          pj.at("iw_scale").get<std::vector<std::vector<double>>>(),
          "prior.iw_scale");
    if (pj.contains("nu_grid"))
      cfg.prior.nu_grid = pj.at("nu_grid").get<std::vector<double>>();
  }
  cfg.prior.validate();
  if (j.contains("simulate")) {
    cfg.simulate = parse_simulate(j.at("simulate"));
    cfg.has_simulate = true;
  }
  if (cfg.particles < 2 || cfg.iterations < 1)
    throw ParseError(path + ": needs particles >= 2 and iterations >= 1");
  return cfg;
}

void apply_desk_preset(RunConfig& cfg) {
  cfg.particles = 4000;
  cfg.iterations = 5;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(base + 0x9e3779b97f4a7c15ULL * (a + 1)) ^
             mix(b + 0x7f4a7c15f39cc060ULL));
}

}  // namespace skewfit
