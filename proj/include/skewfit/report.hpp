#pragma once

#include <json.hpp>
#include <string>

#include "skewfit/pmc.hpp"

namespace skewfit {

// One fitted model, ready for serialization. The wall time is carried for
// console display but kept out of the serialized report so that reruns with
// the same seed produce byte-identical files.
struct FitReport {
  std::string model;
  double log_marginal = 0.0;
  std::vector<double> xi, psi, delta, alpha;
  std::vector<std::vector<double>> g, sigma;
  double nu_mean = 0.0;
  std::vector<double> nu_grid, nu_pmf;
  std::vector<IterationDiagnostics> iterations;
  long n = 0;
  int p = 0;
  int particles = 0;
  int pmc_iterations = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;  // not serialized
};

FitReport make_fit_report(const FitResult& result, long n, int p,
                          double wall_seconds);

nlohmann::json to_json(const FitReport& report);
FitReport fit_report_from_json(const nlohmann::json& j);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace skewfit
