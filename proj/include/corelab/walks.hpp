#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corelab/peel.hpp"
#include "corelab/rng.hpp"

namespace corelab::walks {

enum class Variant { exact, plus, minus };

struct WalkParams {
    Variant variant = Variant::exact;
    int k = 3;
    double c = 4.0;      // average degree, > k; fixes q = q_{k,c}
    double xi = 0.0;     // envelope width (plus/minus variants)
    long long y0 = 1;
};

// One-step law on {-1, 0, k-1}. exact: P(k-1)=q. plus: P(k-1)=q+xi.
// minus: P(k-1)=q-xi, P(-1)=xi.
struct StepLaw {
    int k = 3;
    double p_up = 0;    // P(Z = k-1)
    double p_zero = 0;  // P(Z = 0)
    double p_down = 0;  // P(Z = -1)
};

// Validates the WalkParams invariants (xi bounds per variant) and fills in q.
StepLaw step_law(const WalkParams& p);

// Common-random-numbers step: one uniform thresholds all three laws so that
// Z^-(u) <= Z(u) <= Z^+(u) pointwise.
int step_from_uniform(const StepLaw& law, double u);

struct WalkPath {
    std::vector<long long> y;            // Y_j for j >= 1
    std::optional<long long> died_at;    // first j with Y_j <= 0
    bool survived_horizon = false;
};

// Iterates Y_j = Y_{j-1} + Z_j - 1 from Y_0 = y0 until death or the horizon.
WalkPath simulate_walk(const WalkParams& p, long long horizon, Rng& rng);

struct SurvivalEstimate {
    double p_hat = 0;
    double stderr_ = 0;
    long long trials = 0;
};

// Monte Carlo fraction of walks alive at the horizon, with binomial standard
// error. Trials use deterministic per-trial streams derived from `seed`, so
// the result is identical whether or not it runs parallel.
SurvivalEstimate survival_estimate(const WalkParams& p, long long horizon,
                                   long long trials, std::uint64_t seed,
                                   bool parallel = true);

struct CouplingReport {
    bool passed = true;
    long long first_violation = -1;       // loop index j (1-based), -1 if none
    std::string which;                    // violated bound
    long long checked = 0;
};

// Verifies the domination preconditions against a recorded trace for the
// first t loop iterations: p_j <= q + xi^+ (upper coupling), p_j >= q - xi^-
// and p_j' <= xi^- (lower coupling).
CouplingReport coupling_check(const peel::PeelTrace& trace, const WalkParams& plus,
                              const WalkParams& minus, long long t);

}  // namespace corelab::walks
