// Times the OpenMP trial loops against their serial reference on three
// representative workloads and checks that both produce identical output.
#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "corelab/experiment.hpp"
#include "corelab/walks.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Sample {
    double serial_ms = 0;
    double parallel_ms = 0;
    bool identical = false;
};

template <class Fn>
Sample run_pair(Fn&& fn) {
    Sample s;
    auto t0 = Clock::now();
    std::string a = fn(false);
    s.serial_ms = ms_since(t0);
    t0 = Clock::now();
    std::string b = fn(true);
    s.parallel_ms = ms_since(t0);
    s.identical = a == b;
    return s;
}

void report(const char* name, const Sample& s) {
    std::printf("%-22s serial %9.1f ms   omp %9.1f ms   speedup %.2fx   identical %s\n",
                name, s.serial_ms, s.parallel_ms,
                s.parallel_ms > 0 ? s.serial_ms / s.parallel_ms : 0.0,
                s.identical ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serial\n");
#endif

    using namespace corelab;

    // walk survival batch
    Sample walk = run_pair([](bool parallel) {
        walks::WalkParams p{walks::Variant::exact, 3, 3.45, 0.0, 4};
        auto est = walks::survival_estimate(p, 10000, 50000, 42, parallel);
        return std::to_string(est.p_hat);
    });
    report("walk survival", walk);

    // regime-sweep trial batch (simple k-cores + W)
    Sample sweep = run_pair([](bool parallel) {
        experiment::ExperimentConfig cfg;
        cfg.kind = experiment::Kind::sweep;
        cfg.k = 3;
        cfg.n_values = {3000};
        cfg.c_values = {3.45};
        cfg.trials = 40;
        cfg.seed = 42;
        cfg.parallel = parallel;
        return experiment::run_regime_sweep(cfg).main_csv;
    });
    report("regime sweep", sweep);

    // heavy/light peel trajectories
    Sample traj = run_pair([](bool parallel) {
        experiment::ExperimentConfig cfg;
        cfg.kind = experiment::Kind::trajectory_compare;
        cfg.k = 3;
        cfg.n_values = {15000};
        cfg.c_values = {3.2};
        cfg.trials = 12;
        cfg.seed = 42;
        cfg.parallel = parallel;
        return experiment::run_trajectory_compare(cfg).main_csv;
    });
    report("trajectory compare", traj);

    bool ok = walk.identical && sweep.identical && traj.identical;
    if (!ok) std::printf("FAIL: serial and parallel outputs differ\n");
    return ok ? 0 : 1;
}
