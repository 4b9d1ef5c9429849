#pragma once

#include <json.hpp>

#include "skewfit/config.hpp"
#include "skewfit/likelihood.hpp"
#include "skewfit/report.hpp"

namespace skewfit {

// Library entry points behind the CLI subcommands. The *_command wrappers
// handle file IO and exit codes; the run_* functions return the report
// payloads and are what the python bindings expose.

Dataset simulate_from_config(const SimulateConfig& sim, std::uint64_t seed);

FitReport run_fit(const Dataset& data, const RunConfig& cfg);

// Fits all four nested models with per-model derived seeds and normalizes
// p(y|M) into posterior model probabilities under a uniform model prior.
// A failed model is dropped with a warning and the rest renormalized.
nlohmann::json run_compare(const Dataset& data, const RunConfig& cfg);

// For each generating model, simulates `replications` datasets from the
// configured true parameters and runs the comparison on each; the stacked
// per-replication probability tables are the data behind the simulation
// study figures.
nlohmann::json run_study(const RunConfig& cfg);

int simulate_command(const RunConfig& cfg);
int fit_command(const RunConfig& cfg);
int compare_command(const RunConfig& cfg);
int study_command(const RunConfig& cfg);

}  // namespace skewfit
