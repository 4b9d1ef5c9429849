#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skewfit/commands.hpp"
#include "skewfit/distributions.hpp"
#include "skewfit/likelihood.hpp"
#include "skewfit/pmc.hpp"
#include "skewfit/simulate.hpp"
#include "skewfit/specfun.hpp"

namespace py = pybind11;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

skewfit::AlphaParams make_params(const VectorXd& xi, const VectorXd& alpha,
                                 const MatrixXd& sigma, double nu) {
  return skewfit::AlphaParams{xi, alpha, skewfit::SpdMatrix(sigma), nu};
}

skewfit::RunConfig make_config(const std::string& model, int particles,
                               int iterations, std::uint64_t seed, int threads,
                               const std::vector<double>& nu_grid) {
  skewfit::RunConfig cfg;
  cfg.model = model;
  cfg.particles = particles;
  cfg.iterations = iterations;
  cfg.seed = seed;
  cfg.threads = threads;
  if (!nu_grid.empty()) cfg.prior.nu_grid = nu_grid;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Objective-Bayes inference for the multivariate skew-t model and its "
      "nested sub-models via a population Monte Carlo sampler";

  // densities
  m.def(
      "st_logpdf",
      [](const VectorXd& y, const VectorXd& xi, const VectorXd& alpha,
         const MatrixXd& sigma, double nu) {
        return skewfit::st_logpdf(y, make_params(xi, alpha, sigma, nu));
      },
      py::arg("y"), py::arg("xi"), py::arg("alpha"), py::arg("sigma"),
      py::arg("nu"), "Log density of the p-variate skew-t distribution");
  m.def(
      "sn_logpdf",
      [](const VectorXd& y, const VectorXd& xi, const VectorXd& alpha,
         const MatrixXd& sigma) {
        return skewfit::sn_logpdf(y, xi, alpha, skewfit::SpdMatrix(sigma));
      },
      py::arg("y"), py::arg("xi"), py::arg("alpha"), py::arg("sigma"),
      "Log density of the p-variate skew-normal distribution");
  m.def(
      "mvt_logpdf",
      [](const VectorXd& y, const VectorXd& loc, const MatrixXd& scale,
         double nu) {
        return skewfit::mvt_logpdf(y, loc, skewfit::SpdMatrix(scale), nu);
      },
      py::arg("y"), py::arg("loc"), py::arg("scale"), py::arg("nu"));
  m.def(
      "mvn_logpdf",
      [](const VectorXd& y, const VectorXd& mean, const MatrixXd& cov) {
        return skewfit::mvn_logpdf(y, mean, skewfit::SpdMatrix(cov));
      },
      py::arg("y"), py::arg("mean"), py::arg("cov"));

  // special functions
  m.def("student_t_cdf", &skewfit::specfun::student_t_cdf, py::arg("x"),
        py::arg("dof"));
  m.def("digamma", &skewfit::specfun::digamma, py::arg("x"));
  m.def(
      "kummer_m",
      [](double a, double g, double z) {
        const auto r = skewfit::specfun::kummer_m(a, g, z);
        return py::make_tuple(r.value, r.converged, r.terms_used);
      },
      py::arg("a"), py::arg("g"), py::arg("z"),
      "Confluent hypergeometric M(a, g, z); returns (value, converged, terms)");
  m.def(
      "parabolic_cylinder_d",
      [](double p, double z) {
        const auto r = skewfit::specfun::parabolic_cylinder_d(p, z);
        return py::make_tuple(r.value, r.converged, r.terms_used);
      },
      py::arg("p"), py::arg("z"));

  // v_i full-conditional machinery
  m.def(
      "log_kv",
      [](double a, double b, double c) {
        return skewfit::kv_constant({a, b, c});
      },
      py::arg("a"), py::arg("b"), py::arg("c"),
      "Log normalizing constant of v^{c-1} exp(-a v - b sqrt(v)) on (0, inf)");
  m.def(
      "beta_star",
      [](double a, double b, double c) { return skewfit::beta_star({a, b, c}); },
      py::arg("a"), py::arg("b"), py::arg("c"));

  // simulation and inference
  m.def(
      "simulate",
      [](const std::string& model, const VectorXd& xi, const VectorXd& alpha,
         const MatrixXd& sigma, double nu, long n, std::uint64_t seed) {
        const auto spec = skewfit::ModelSpec::from_name(model);
        skewfit::RngStream rng(seed, 0);
        return skewfit::simulate_dataset(spec,
                                         make_params(xi, alpha, sigma, nu), n,
                                         rng)
            .y;
      },
      py::arg("model"), py::arg("xi"), py::arg("alpha"), py::arg("sigma"),
      py::arg("nu"), py::arg("n"), py::arg("seed"),
      "Draw n rows from the exact stochastic representation");
  m.def(
      "_fit_json",
      [](const MatrixXd& y, const std::string& model, int particles,
         int iterations, std::uint64_t seed, int threads,
         const std::vector<double>& nu_grid) {
        const skewfit::Dataset data{y};
        const auto cfg =
            make_config(model, particles, iterations, seed, threads, nu_grid);
        return skewfit::to_json(skewfit::run_fit(data, cfg)).dump();
      },
      py::arg("y"), py::arg("model"), py::arg("particles"),
      py::arg("iterations"), py::arg("seed"), py::arg("threads"),
      py::arg("nu_grid"));
  m.def(
      "_compare_json",
      [](const MatrixXd& y, int particles, int iterations, std::uint64_t seed,
         int threads, const std::vector<double>& nu_grid) {
        const skewfit::Dataset data{y};
        const auto cfg =
            make_config("st", particles, iterations, seed, threads, nu_grid);
        return skewfit::run_compare(data, cfg).dump();
      },
      py::arg("y"), py::arg("particles"), py::arg("iterations"),
      py::arg("seed"), py::arg("threads"), py::arg("nu_grid"));

  m.attr("__version__") = "0.1.0";
}
