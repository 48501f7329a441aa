#pragma once

#include <cstdint>
#include <string>

#include "logeuler/experiments.hpp"

namespace logeuler {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One run = one experiment + grid + solver policy + experiment parameters.
// Parsed from the key-value dialect documented in the README (JSON accepted
// as an alternative); unknown keys are rejected with path-qualified errors.
struct RunConfig {
    std::string experiment; // convergence | continuity | gamma_comparison | nonuniform | support
    std::uint64_t seed = 1;
    int grid_n = 128;
    SolverConfig solver;
    std::string output_dir = "out";
    bool snapshots = false;

    ConvergenceParams convergence;
    ContinuityParams continuity;
    GammaComparisonParams gamma_comparison;
    NonuniformParams nonuniform;
    SupportParams support;
};

RunConfig parse_config(const std::string& text);

// Canonical key-value echo; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig& cfg);

// Dispatch to the matching runner with grid/seed/solver applied; the report
// carries the canonical config echo.
ExperimentReport run_experiment(const RunConfig& cfg, int threads = 1);

} // namespace logeuler
