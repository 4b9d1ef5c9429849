#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skewfit/model.hpp"

namespace skewfit {

// True parameters for the simulator and the study harness. Symmetric
// generators ignore alpha, light-tailed ones ignore nu.
struct SimulateConfig {
  std::string model = "st";
  long n = 300;
  std::vector<double> xi;
  std::vector<std::vector<double>> sigma;
  std::vector<double> alpha;
  double nu = 10.0;
};

struct RunConfig {
  std::string input_path;
  std::string output_path;
  std::string model = "st";
  PriorConfig prior;
  int particles = 20000;  // paper-scale defaults
  int iterations = 6;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency
  int replications = 50;
  SimulateConfig simulate;
  bool has_simulate = false;
};

RunConfig load_run_config(const std::string& path);

// N = 4000, T = 5: minutes instead of hours
void apply_desk_preset(RunConfig& cfg);

// substream derivation so studies are reproducible under partial reruns
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

}  // namespace skewfit
