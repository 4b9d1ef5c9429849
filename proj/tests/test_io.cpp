#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "skewfit/commands.hpp"
#include "skewfit/csv.hpp"
#include "skewfit/pmc.hpp"
#include "skewfit/simulate.hpp"
#include "support/oracles.hpp"

using namespace skewfit;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using oracles::abs_err;
using oracles::rel_err;

namespace {

std::string tmp_path(const std::string& name) { return "/tmp/skewfit_" + name; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

VectorXd vec(std::initializer_list<double> xs) {
  VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("load_csv parses headers and values") {
  const std::string path = tmp_path("ok.csv");
  write_file(path, "a,b\n1.5,2\n-0.25,1e3\n4,5\n");
  const Dataset d = load_csv(path);
  CHECK(d.n() == 3);
  CHECK(d.p() == 2);
  CHECK(d.y(0, 0) == 1.5);
  CHECK(d.y(1, 1) == 1000.0);

  const std::string headerless = tmp_path("nohdr.csv");
  write_file(headerless, "1,2\n3,4\n");
  CHECK(load_csv(headerless).n() == 2);
}

TEST_CASE("load_csv error coordinates") {
  const std::string na = tmp_path("na.csv");
  write_file(na, "x,y\n1,2\n3,NA\n");
  try {
    load_csv(na);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 3") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
  }

  const std::string ragged = tmp_path("ragged.csv");
  write_file(ragged, "1,2\n3\n");
  CHECK_THROWS_AS(load_csv(ragged), ParseError);

  const std::string missing = tmp_path("missing.csv");
  write_file(missing, "1,2\n3,\n");
  CHECK_THROWS_AS(load_csv(missing), ParseError);

  write_file(tmp_path("empty.csv"), "");
  CHECK_THROWS_AS(load_csv(tmp_path("empty.csv")), ParseError);
  CHECK_THROWS_AS(load_csv("/nonexistent/x.csv"), ParseError);
}

TEST_CASE("csv round-trip") {
  MatrixXd y(2, 3);
  y << 0.125, -3.5, 1e-8, 7.0, 0.0, -2.25;
  const Dataset d{y};
  const std::string path = tmp_path("rt.csv");
  write_csv(path, d, {"u", "v", "w"});
  const Dataset back = load_csv(path);
  CHECK((back.y - y).norm() == 0.0);
}

TEST_CASE("fit report JSON round-trip preserves every field") {
  PriorConfig cfg;
  RngStream rng(5, 0);
  MatrixXd y(40, 2);
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 2; ++j) y(i, j) = rng.normal();
  const Dataset data{y};
  const FitResult res = run_pmc(data, ModelSpec::skew_t(), cfg, 100, 2, 3, 1);
  const FitReport rep = make_fit_report(res, data.n(), data.p(), 12.5);
  const nlohmann::json j = to_json(rep);
  const FitReport back = fit_report_from_json(j);
  CHECK(back.model == rep.model);
  CHECK(back.log_marginal == rep.log_marginal);
  CHECK(back.xi == rep.xi);
  CHECK(back.psi == rep.psi);
  CHECK(back.delta == rep.delta);
  CHECK(back.alpha == rep.alpha);
  CHECK(back.g == rep.g);
  CHECK(back.sigma == rep.sigma);
  CHECK(back.nu_grid == rep.nu_grid);
  CHECK(back.nu_pmf == rep.nu_pmf);
  CHECK(back.nu_mean == rep.nu_mean);
  CHECK(back.iterations.size() == rep.iterations.size());
  for (std::size_t k = 0; k < rep.iterations.size(); ++k) {
    CHECK(back.iterations[k].entropy == rep.iterations[k].entropy);
    CHECK(back.iterations[k].log_sum_unnorm ==
          rep.iterations[k].log_sum_unnorm);
  }
  CHECK(back.seed == rep.seed);
  CHECK(back.n == rep.n);
  // wall time stays out of the serialized payload
  CHECK(!j.contains("wall_seconds"));

  const std::string path = tmp_path("report.json");
  write_json_file(path, j);
  CHECK(read_json_file(path) == j);
}

TEST_CASE("simulate_dataset: gaussian reduction moments") {
  MatrixXd sigma(2, 2);
  sigma << 2.0, 0.8, 0.8, 1.5;
  const AlphaParams truth{vec({1.0, -2.0}), VectorXd::Zero(2),
                          SpdMatrix(sigma), 0.0};
  RngStream rng(31, 0);
  const Dataset d =
      simulate_dataset(ModelSpec::normal(), truth, 100000, rng);
  const VectorXd mean = d.y.colwise().mean().transpose();
  MatrixXd cov = MatrixXd::Zero(2, 2);
  for (long i = 0; i < d.n(); ++i) {
    const VectorXd c = d.row(i) - mean;
    cov += c * c.transpose();
  }
  cov /= static_cast<double>(d.n());
  CHECK((mean - truth.xi).norm() <= 0.03);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(rel_err(cov(a, b), sigma(a, b)) <= 0.05);
}

TEST_CASE("simulate_dataset matches the observed density (KS at p=1)") {
  const AlphaParams truth{vec({0.0}), vec({3.0}), SpdMatrix::identity(1), 5.0};
  RngStream rng(32, 0);
  const Dataset d = simulate_dataset(ModelSpec::skew_t(), truth, 30000, rng);
  std::vector<double> draws(d.n());
  for (long i = 0; i < d.n(); ++i) draws[i] = d.y(i, 0);
  auto pdf = [&](double x) { return std::exp(st_logpdf(vec({x}), truth)); };
  CHECK(oracles::ks_vs_density(draws, pdf, -40.0) < 0.01);
}

TEST_CASE("simulate_dataset on the simulation-study parameters") {
  MatrixXd sigma(4, 4);
  sigma << 7, 2, 1, 1, 2, 8, -2, 3, 1, -2, 5, -2, 1, 3, -2, 8;
  const AlphaParams truth{vec({5.0, 9.0, 3.0, 10.0}), vec({4.0, 4.0, 4.0, 4.0}),
                          SpdMatrix(sigma), 10.0};
  RngStream rng(33, 0);
  const Dataset d = simulate_dataset(ModelSpec::skew_t(), truth, 300, rng);
  CHECK(d.n() == 300);
  CHECK(d.p() == 4);
  CHECK(d.y.allFinite());

  RngStream r2(33, 0);
  const Dataset again = simulate_dataset(ModelSpec::skew_t(), truth, 300, r2);
  CHECK((again.y - d.y).norm() == 0.0);
}

TEST_CASE("run config parsing, presets and seed derivation") {
  const std::string path = tmp_path("cfg.json");
  write_file(path, R"({
    "input": "data.csv",
    "output": "report.json",
    "model": "st",
    "particles": 500,
    "iterations": 3,
    "seed": 42,
    "prior": {"iw_dof": 0.0, "nu_grid": [1, 5, 25]},
    "simulate": {"model": "sn", "n": 50, "xi": [0, 0],
                 "sigma": [[1, 0], [0, 1]], "alpha": [2, -1]}
  })");
  RunConfig cfg = load_run_config(path);
  CHECK(cfg.model == "st");
  CHECK(cfg.particles == 500);
  CHECK(cfg.prior.nu_grid.size() == 3);
  CHECK(cfg.has_simulate);
  CHECK(cfg.simulate.n == 50);
  apply_desk_preset(cfg);
  CHECK(cfg.particles == 4000);
  CHECK(cfg.iterations == 5);

  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));

  write_file(tmp_path("badcfg.json"), "{\"model\": \"cauchy\"}");
  CHECK_THROWS(load_run_config(tmp_path("badcfg.json")));
}

TEST_CASE("fit command writes byte-identical reports on reruns") {
  // simulate a small dataset, then fit twice with the same seed
  MatrixXd sigma(2, 2);
  sigma << 1.0, 0.2, 0.2, 1.0;
  const AlphaParams truth{vec({0.0, 1.0}), VectorXd::Zero(2),
                          SpdMatrix(sigma), 0.0};
  RngStream rng(40, 0);
  const Dataset data = simulate_dataset(ModelSpec::normal(), truth, 70, rng);
  write_csv(tmp_path("fitdata.csv"), data);

  RunConfig cfg;
  cfg.input_path = tmp_path("fitdata.csv");
  cfg.model = "t";
  cfg.particles = 150;
  cfg.iterations = 2;
  cfg.seed = 7;
  cfg.threads = 1;

  cfg.output_path = tmp_path("fit1.json");
  CHECK(fit_command(cfg) == 0);
  cfg.output_path = tmp_path("fit2.json");
  cfg.threads = 3;  // thread count must not leak into the report
  CHECK(fit_command(cfg) == 0);
  CHECK(slurp(tmp_path("fit1.json")) == slurp(tmp_path("fit2.json")));
  CHECK(!slurp(tmp_path("fit1.json")).empty());
}

TEST_CASE("fit command refuses an underdetermined dataset") {
  write_file(tmp_path("tiny.csv"), "1,2\n3,4\n");
  RunConfig cfg;
  cfg.input_path = tmp_path("tiny.csv");
  cfg.output_path = tmp_path("tiny_report.json");
  cfg.particles = 100;
  cfg.iterations = 1;
  CHECK(fit_command(cfg) != 0);
}

TEST_CASE("compare: probabilities are a distribution over the four models") {
  MatrixXd sigma(2, 2);
  sigma << 1.0, 0.3, 0.3, 1.0;
  const AlphaParams truth{vec({0.0, 0.0}), VectorXd::Zero(2),
                          SpdMatrix(sigma), 0.0};
  RngStream rng(41, 0);
  const Dataset data = simulate_dataset(ModelSpec::normal(), truth, 70, rng);
  RunConfig cfg;
  cfg.particles = 150;
  cfg.iterations = 2;
  cfg.seed = 13;
  cfg.threads = 1;
  const nlohmann::json out = run_compare(data, cfg);
  double total = 0.0;
  for (const auto& [name, prob] : out.at("posterior_probabilities").items()) {
    CHECK(prob.get<double>() >= 0.0);
    total += prob.get<double>();
  }
  CHECK(abs_err(total, 1.0) <= 1e-12);
  CHECK(out.at("fits").size() == 4);
  CHECK(out.at("warnings").empty());
}

TEST_CASE("study command emits one block per generator with sorted rows") {
  RunConfig cfg;
  cfg.particles = 120;
  cfg.iterations = 2;
  cfg.seed = 17;
  cfg.threads = 1;
  cfg.replications = 2;
  cfg.has_simulate = true;
  cfg.simulate.model = "st";
  cfg.simulate.n = 60;
  cfg.simulate.xi = {0.0, 0.0};
  cfg.simulate.sigma = {{1.0, 0.2}, {0.2, 1.0}};
  cfg.simulate.alpha = {3.0, 3.0};
  cfg.simulate.nu = 10.0;
  const nlohmann::json out = run_study(cfg);
  CHECK(out.at("generators").size() == 4);
  int rows = 0;
  for (const auto& block : out.at("generators")) {
    CHECK(block.at("rows").size() == 2);
    rows += static_cast<int>(block.at("rows").size());
    const std::string gen = block.at("generator").get<std::string>();
    double prev = 2.0;
    for (const auto& row : block.at("rows")) {
      if (!row.contains("posterior_probabilities")) continue;
      const double p =
          row.at("posterior_probabilities").at(gen).get<double>();
      CHECK(p <= prev + 1e-12);
      prev = p;
    }
  }
  CHECK(rows == 8);
}

TEST_CASE("simulate command writes a loadable CSV") {
  RunConfig cfg;
  cfg.seed = 3;
  cfg.output_path = tmp_path("simout.csv");
  cfg.has_simulate = true;
  cfg.simulate.model = "sn";
  cfg.simulate.n = 25;
  cfg.simulate.xi = {1.0, 2.0};
  cfg.simulate.sigma = {{2.0, 0.5}, {0.5, 1.0}};
  cfg.simulate.alpha = {4.0, -1.0};
  CHECK(simulate_command(cfg) == 0);
  const Dataset d = load_csv(tmp_path("simout.csv"));
  CHECK(d.n() == 25);
  CHECK(d.p() == 2);
}
