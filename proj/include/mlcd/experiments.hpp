#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlcd/detectors.hpp"

namespace mlcd {

/// Grid and execution plan for one numbered simulation study. Every value
/// vector is a sweep axis; the cartesian product forms the grid (the built-in
/// studies sweep exactly one axis each).
struct ExperimentSpec {
    int id = 1;
    std::string preset = "desk";  // "desk" or "paper"

    std::vector<int> n_values;
    std::vector<int> K_values;
    std::vector<int> L_values;
    std::vector<double> rho_values;
    /// When positive and K is swept, n follows as n_per_community * K.
    int n_per_community = 0;

    int trials = 10;
    std::uint64_t seed = 1;
    std::vector<Algorithm> algorithms;
    bool assortative = false;

    /// Also estimate K per trial via the modularity sweep (fills k_hat).
    bool with_estimate_k = false;
    int kmin = 1, kmax = 8;

    int threads = 0;  // 0 = hardware concurrency
};

/// The six built-in study configurations. "desk" presets shrink the grids to
/// CI scale; "paper" presets are the full-size versions.
ExperimentSpec make_experiment_spec(int id, const std::string& preset);

struct ExperimentOutcome {
    std::string rows_path;     // per-trial CSV
    std::string summary_path;  // per grid point x algorithm means
    std::string plot_path;     // gnuplot script over the summary
    int rows = 0;
    int failures = 0;          // rows that carry an error message
};

/// Run all (grid point, trial) cells on a worker pool, score every algorithm,
/// and write rows in deterministic (grid, trial, algorithm) order regardless
/// of thread count. Per-trial failures become rows with the error column set.
ExperimentOutcome run_experiment(const ExperimentSpec& spec, const std::string& out_dir);

} // namespace mlcd
