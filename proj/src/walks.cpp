#include "corelab/walks.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "corelab/analytic.hpp"

namespace corelab::walks {

StepLaw step_law(const WalkParams& p) {
    if (p.xi < 0) throw std::invalid_argument("step_law: xi must be >= 0");
    const double q = analytic::solve_lambda(p.k, p.c).q_kc;
    StepLaw law;
    law.k = p.k;
    switch (p.variant) {
        case Variant::exact:
            if (p.xi != 0) throw std::invalid_argument("step_law: exact law requires xi = 0");
            law.p_up = q;
            law.p_down = 0;
            break;
        case Variant::plus:
            if (p.xi > 1 - q)
                throw std::invalid_argument("step_law: plus law requires xi <= 1 - q");
            law.p_up = q + p.xi;
            law.p_down = 0;
            break;
        case Variant::minus:
            if (p.xi > q)
                throw std::invalid_argument("step_law: minus law requires xi <= q");
            law.p_up = q - p.xi;
            law.p_down = p.xi;
            break;
    }
    law.p_zero = 1.0 - law.p_up - law.p_down;
    return law;
}

int step_from_uniform(const StepLaw& law, double u) {
    // up-steps use the left end of [0,1), down-steps the right end; with a
    // shared u this realizes the pointwise ordering Z^- <= Z <= Z^+
    if (u < law.p_up) return law.k - 1;
    if (u >= 1.0 - law.p_down) return -1;
    return 0;
}

WalkPath simulate_walk(const WalkParams& p, long long horizon, Rng& rng) {
    if (horizon < 1) throw std::invalid_argument("simulate_walk: horizon must be >= 1");
    const StepLaw law = step_law(p);
    WalkPath path;
    long long y = p.y0;
    if (y <= 0) {
        path.died_at = 0;
        return path;
    }
    path.y.reserve(static_cast<std::size_t>(std::min<long long>(horizon, 1 << 20)));
    for (long long j = 1; j <= horizon; ++j) {
        y += step_from_uniform(law, uniform01(rng)) - 1;
        path.y.push_back(y);
        if (y <= 0) {
            path.died_at = j;
            return path;
        }
    }
    path.survived_horizon = true;
    return path;
}

SurvivalEstimate survival_estimate(const WalkParams& p, long long horizon,
                                   long long trials, std::uint64_t seed, bool parallel) {
    if (trials < 1) throw std::invalid_argument("survival_estimate: trials must be >= 1");
    const StepLaw law = step_law(p);
    long long survived = 0;

#pragma omp parallel for schedule(static) reduction(+ : survived) if (parallel)
    for (long long t = 0; t < trials; ++t) {
        Rng rng = trial_rng(seed, p.k, static_cast<std::uint64_t>(horizon), 0,
                            static_cast<std::uint64_t>(t));
        long long y = p.y0;
        long long j = 0;
        while (y > 0 && j < horizon) {
            y += step_from_uniform(law, uniform01(rng)) - 1;
            ++j;
        }
        if (y > 0) ++survived;
    }
    double p_hat = static_cast<double>(survived) / trials;
    double se = std::sqrt(p_hat * (1.0 - p_hat) / trials);
    return {p_hat, se, trials};
}

CouplingReport coupling_check(const peel::PeelTrace& trace, const WalkParams& plus,
                              const WalkParams& minus, long long t) {
    if (t > static_cast<long long>(trace.p_hat.size()))
        throw std::invalid_argument("coupling_check: t exceeds trace length");
    const StepLaw up = step_law(plus);
    const StepLaw down = step_law(minus);
    CouplingReport report;
    report.checked = t;
    for (long long j = 0; j < t; ++j) {
        auto [pj, pj_prime] = trace.p_hat[static_cast<std::size_t>(j)];
        if (pj > up.p_up) {
            report.passed = false;
            report.first_violation = j + 1;
            report.which = "p_j > q + xi_plus";
            return report;
        }
        if (pj < down.p_up) {
            report.passed = false;
            report.first_violation = j + 1;
            report.which = "p_j < q - xi_minus";
            return report;
        }
        if (pj_prime > down.p_down) {
            report.passed = false;
            report.first_violation = j + 1;
            report.which = "p_j' > xi_minus";
            return report;
        }
    }
    return report;
}

}  // namespace corelab::walks
