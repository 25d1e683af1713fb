#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace corelab::experiment {

enum class Kind { sweep, gnm, trajectory_compare, walk_vs_peel };

struct ExperimentConfig {
    Kind kind = Kind::sweep;
    int k = 3;
    std::vector<long long> n_values;
    std::vector<double> c_values;
    long long trials = 1;
    long long h_cutoff = 50;       // "small W" threshold h(n)
    double epsilon_prime = 0.02;   // cascade-conditioning fraction
    std::uint64_t seed = 1;
    std::string output_path;

    // op-specific knobs for the individual experiment kinds
    bool multigraph = false;          // sweep/gap: skip the simplicity rejection
    int max_retries = 100000;         // simplicity rejection cap
    double gamma = 0.05;              // trajectory domain D_gamma
    double dev_tol = 0.02;            // trajectory sup-deviation tolerance
    double t_exponent = 0.4;          // walk_vs_peel: t = n^t_exponent
    double xi_scale = 10.0;           // walk_vs_peel: xi = xi_scale * t / n
    std::vector<double> gamma_grid = {0.01, 0.02, 0.05, 0.1};  // gap statistic
    bool parallel = true;

    // Throws std::invalid_argument on unknown keys, missing required keys or
    // out-of-range values.
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
};

struct CsvOutput {
    std::string main_csv;
    std::string summary_csv;  // empty when the op has no summary
};

// Three-regime sweep: simple (or multigraph) k-cores, one random edge
// deleted, W classified as emptied / small / intermediate.
CsvOutput run_regime_sweep(const ExperimentConfig& cfg);

// Survivor-core sizes of K(G-e)/n per trial plus the support-gap report over
// the gamma grid.
CsvOutput gap_statistic(const ExperimentConfig& cfg);

// G(n,m) robustness run: k-core sizes against the giant-core prediction,
// then W of the core.
CsvOutput run_gnm_experiment(const ExperimentConfig& cfg);

// Heavy/light peel trajectories against the closed-form ODE solutions,
// conditioned on surviving epsilon_prime * n steps.
CsvOutput run_trajectory_compare(const ExperimentConfig& cfg);

// Point-level deletion traces against the three walks with matched Y_0:
// truncated death-time KS distances, survival ordering, coupling pass rates.
CsvOutput run_walk_vs_peel(const ExperimentConfig& cfg);

// Dispatch on cfg.kind.
CsvOutput run(const ExperimentConfig& cfg);

// Two-sample Kolmogorov-Smirnov distance; exposed for tests.
double ks_distance(std::vector<double> a, std::vector<double> b);

}  // namespace corelab::experiment
