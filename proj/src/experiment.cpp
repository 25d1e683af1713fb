#include "corelab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "corelab/analytic.hpp"
#include "corelab/csv.hpp"
#include "corelab/degseq.hpp"
#include "corelab/errors.hpp"
#include "corelab/graphgen.hpp"
#include "corelab/ode.hpp"
#include "corelab/peel.hpp"
#include "corelab/rng.hpp"
#include "corelab/walks.hpp"

namespace corelab::experiment {

namespace {

using csv::fmt;

// Independent work items; results land in per-trial slots so scheduling does
// not affect the output order.
template <class Fn>
void for_each_trial(long long trials, bool parallel, Fn&& fn) {
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long t = 0; t < trials; ++t) fn(t);
}

long long edge_count(double c, long long n) {
    return std::llround(c * static_cast<double>(n) / 2.0);
}

struct Binomial {
    double p = 0, lo = 0, hi = 0;
};

Binomial binomial_ci(long long hits, long long trials) {
    double p = trials > 0 ? static_cast<double>(hits) / trials : 0.0;
    double se = trials > 0 ? std::sqrt(p * (1 - p) / trials) : 0.0;
    return {p, std::max(0.0, p - 1.96 * se), std::min(1.0, p + 1.96 * se)};
}

Kind parse_kind(const std::string& s) {
    if (s == "sweep") return Kind::sweep;
    if (s == "gnm") return Kind::gnm;
    if (s == "trajectory_compare") return Kind::trajectory_compare;
    if (s == "walk_vs_peel") return Kind::walk_vs_peel;
    throw std::invalid_argument("config: unknown kind '" + s + "'");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {
        "kind",         "k",         "n_values",   "c_values",  "trials",
        "h_cutoff",     "epsilon_prime", "seed",   "output_path",
        "multigraph",   "max_retries",   "gamma",  "dev_tol",
        "t_exponent",   "xi_scale",  "gamma_grid", "parallel"};
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    for (const auto& item : j.items())
        if (!known.count(item.key()))
            throw std::invalid_argument("config: unknown key '" + item.key() + "'");
    for (const char* req : {"kind", "k", "n_values", "c_values", "trials"})
        if (!j.contains(req))
            throw std::invalid_argument(std::string("config: missing key '") + req + "'");

    ExperimentConfig cfg;
    cfg.kind = parse_kind(j.at("kind").get<std::string>());
    cfg.k = j.at("k").get<int>();
    cfg.n_values = j.at("n_values").get<std::vector<long long>>();
    cfg.c_values = j.at("c_values").get<std::vector<double>>();
    cfg.trials = j.at("trials").get<long long>();
    if (j.contains("h_cutoff")) cfg.h_cutoff = j.at("h_cutoff").get<long long>();
    if (j.contains("epsilon_prime")) cfg.epsilon_prime = j.at("epsilon_prime").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    if (j.contains("multigraph")) cfg.multigraph = j.at("multigraph").get<bool>();
    if (j.contains("max_retries")) cfg.max_retries = j.at("max_retries").get<int>();
    if (j.contains("gamma")) cfg.gamma = j.at("gamma").get<double>();
    if (j.contains("dev_tol")) cfg.dev_tol = j.at("dev_tol").get<double>();
    if (j.contains("t_exponent")) cfg.t_exponent = j.at("t_exponent").get<double>();
    if (j.contains("xi_scale")) cfg.xi_scale = j.at("xi_scale").get<double>();
    if (j.contains("gamma_grid")) cfg.gamma_grid = j.at("gamma_grid").get<std::vector<double>>();
    if (j.contains("parallel")) cfg.parallel = j.at("parallel").get<bool>();

    if (cfg.k < 3) throw std::invalid_argument("config: k must be >= 3");
    if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (cfg.n_values.empty()) throw std::invalid_argument("config: n_values is empty");
    if (cfg.c_values.empty()) throw std::invalid_argument("config: c_values is empty");
    if (cfg.kind == Kind::sweep)
        for (double c : cfg.c_values)
            if (!(c > cfg.k)) throw std::invalid_argument("config: sweep needs c_values > k");
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config: JSON parse error: " + std::string(e.what()));
    }
    return from_json(j);
}

// ---------------------------------------------------------------------------
// regime sweep + gap statistic share their trial kernel
// ---------------------------------------------------------------------------

namespace {

struct SweepTrial {
    bool ok = false;
    long long w = -1;
    long long core_after = -1;
};

// One trial: draw the k-core, delete a random edge, peel.
SweepTrial sweep_trial(const ExperimentConfig& cfg, long long n, long long m,
                       long long trial) {
    Rng rng = trial_rng(cfg.seed, cfg.k, static_cast<std::uint64_t>(n),
                        static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(trial));
    SweepTrial out;
    try {
        graphgen::Multigraph g =
            cfg.multigraph ? graphgen::allocation_kcore(cfg.k, static_cast<int>(n), m, rng)
                           : graphgen::uniform_simple_kcore(cfg.k, static_cast<int>(n), m,
                                                            rng, cfg.max_retries);
        out.w = peel::w_statistic(g, cfg.k, rng);
        out.core_after = n - out.w;
        out.ok = true;
    } catch (const generation_error&) {
        out.ok = false;
    }
    return out;
}

}  // namespace

CsvOutput run_regime_sweep(const ExperimentConfig& cfg) {
    csv::Table trials_tbl({"k", "n", "m", "c", "trial", "status", "w", "w_fraction",
                           "emptied", "small", "intermediate", "core_size_before",
                           "core_size_after"});
    csv::Table summary_tbl({"k", "n", "m", "c", "trials", "genfail", "p_w_eq_n", "p_lo",
                            "p_hi", "p_w_le_h", "q_lo", "q_hi", "intermediate_fraction",
                            "mean_w", "max_w"});

    for (long long n : cfg.n_values) {
        for (double c_target : cfg.c_values) {
            const long long m = edge_count(c_target, n);
            const double c = 2.0 * static_cast<double>(m) / static_cast<double>(n);
            std::vector<SweepTrial> results(cfg.trials);
            for_each_trial(cfg.trials, cfg.parallel,
                           [&](long long t) { results[t] = sweep_trial(cfg, n, m, t); });

            long long genfail = 0, emptied = 0, small = 0, inter = 0, le_h = 0, max_w = 0;
            double sum_w = 0;
            for (long long t = 0; t < cfg.trials; ++t) {
                const SweepTrial& r = results[t];
                if (!r.ok) {
                    ++genfail;
                    trials_tbl.add_row({fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(t),
                                        "genfail", "", "", "", "", "", fmt(n), ""});
                    continue;
                }
                bool is_emptied = r.w == n;
                bool is_small = !is_emptied && r.w <= cfg.h_cutoff;
                bool is_inter = !is_emptied && !is_small;
                emptied += is_emptied;
                small += is_small;
                inter += is_inter;
                le_h += r.w <= cfg.h_cutoff;
                sum_w += static_cast<double>(r.w);
                max_w = std::max(max_w, r.w);
                trials_tbl.add_row({fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(t), "ok",
                                    fmt(r.w), fmt(static_cast<double>(r.w) / n),
                                    fmt(is_emptied), fmt(is_small), fmt(is_inter), fmt(n),
                                    fmt(r.core_after)});
            }
            long long ok = cfg.trials - genfail;
            Binomial pn = binomial_ci(emptied, ok);
            Binomial ph = binomial_ci(le_h, ok);
            summary_tbl.add_row({fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(ok), fmt(genfail),
                                 fmt(pn.p), fmt(pn.lo), fmt(pn.hi), fmt(ph.p), fmt(ph.lo),
                                 fmt(ph.hi),
                                 fmt(ok > 0 ? static_cast<double>(inter) / ok : 0.0),
                                 fmt(ok > 0 ? sum_w / ok : 0.0), fmt(max_w)});
        }
    }
    return {trials_tbl.str(), summary_tbl.str()};
}

CsvOutput gap_statistic(const ExperimentConfig& cfg) {
    csv::Table trials_tbl({"k", "n", "m", "c", "trial", "status", "core_fraction"});
    csv::Table gap_tbl({"k", "n", "m", "c", "gamma", "trials_in_gap", "max_fraction_in_gap"});

    for (long long n : cfg.n_values) {
        for (double c_target : cfg.c_values) {
            const long long m = edge_count(c_target, n);
            const double c = 2.0 * static_cast<double>(m) / static_cast<double>(n);
            std::vector<SweepTrial> results(cfg.trials);
            for_each_trial(cfg.trials, cfg.parallel,
                           [&](long long t) { results[t] = sweep_trial(cfg, n, m, t); });

            std::vector<double> fractions;
            for (long long t = 0; t < cfg.trials; ++t) {
                const SweepTrial& r = results[t];
                if (!r.ok) {
                    trials_tbl.add_row({fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(t),
                                        "genfail", ""});
                    continue;
                }
                double frac = static_cast<double>(r.core_after) / static_cast<double>(n);
                fractions.push_back(frac);
                trials_tbl.add_row(
                    {fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(t), "ok", fmt(frac)});
            }
            for (double g : cfg.gamma_grid) {
                long long in_gap = 0;
                double max_in_gap = 0;
                for (double f : fractions)
                    if (f > 0 && f < g) {
                        ++in_gap;
                        max_in_gap = std::max(max_in_gap, f);
                    }
                gap_tbl.add_row({fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(g), fmt(in_gap),
                                 fmt(max_in_gap)});
            }
        }
    }
    return {trials_tbl.str(), gap_tbl.str()};
}

// ---------------------------------------------------------------------------
// G(n,m) k-core robustness
// ---------------------------------------------------------------------------

CsvOutput run_gnm_experiment(const ExperimentConfig& cfg) {
    csv::Table trials_tbl({"k", "n", "m", "c", "trial", "core_vertices", "core_edges",
                           "pred_vertex_fraction", "pred_edge_fraction", "pred_avg_degree",
                           "w"});
    csv::Table summary_tbl({"k", "n", "m", "c", "trials", "empty_cores",
                            "mean_core_fraction", "pred_vertex_fraction", "rel_err",
                            "p_w_ge_h", "mean_w"});

    struct GnmTrial {
        long long core_n = 0, core_m = 0, w = -1;  // w = -1: empty core, skipped
    };

    for (long long n : cfg.n_values) {
        for (double c_target : cfg.c_values) {
            const long long m = edge_count(c_target, n);
            const double c = 2.0 * static_cast<double>(m) / static_cast<double>(n);
            bool have_pred = true;
            analytic::CorePrediction pred{};
            try {
                pred = analytic::giant_core_prediction(cfg.k, c);
            } catch (const std::exception&) {
                have_pred = false;  // c <= c_k sanity runs
            }

            std::vector<GnmTrial> results(cfg.trials);
            for_each_trial(cfg.trials, cfg.parallel, [&](long long t) {
                Rng rng = trial_rng(cfg.seed, cfg.k, static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(m),
                                    static_cast<std::uint64_t>(t));
                graphgen::Multigraph g = graphgen::gnm(static_cast<int>(n), m, rng);
                peel::KcoreResult core = peel::kcore(g, cfg.k);
                GnmTrial r;
                r.core_n = core.vertex_count;
                r.core_m = core.graph.m();
                if (core.vertex_count > 0 && core.graph.m() > 0)
                    r.w = peel::w_statistic(core.graph, cfg.k, rng);
                results[t] = r;
            });

            long long empty_cores = 0, w_ge_h = 0, w_trials = 0;
            double sum_core = 0, sum_w = 0;
            for (long long t = 0; t < cfg.trials; ++t) {
                const GnmTrial& r = results[t];
                if (r.core_n == 0) ++empty_cores;
                sum_core += static_cast<double>(r.core_n);
                if (r.w >= 0) {
                    ++w_trials;
                    sum_w += static_cast<double>(r.w);
                    if (r.w >= cfg.h_cutoff) ++w_ge_h;
                }
                trials_tbl.add_row({fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(t),
                                    fmt(r.core_n), fmt(r.core_m),
                                    have_pred ? fmt(pred.vertex_fraction) : "",
                                    have_pred ? fmt(pred.edge_fraction) : "",
                                    have_pred ? fmt(pred.core_avg_degree) : "",
                                    r.w >= 0 ? fmt(r.w) : ""});
            }
            double mean_core_frac = sum_core / static_cast<double>(cfg.trials) /
                                    static_cast<double>(n);
            double rel_err = have_pred && pred.vertex_fraction > 0
                                 ? std::abs(mean_core_frac - pred.vertex_fraction) /
                                       pred.vertex_fraction
                                 : 0.0;
            summary_tbl.add_row(
                {fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(cfg.trials), fmt(empty_cores),
                 fmt(mean_core_frac), have_pred ? fmt(pred.vertex_fraction) : "",
                 have_pred ? fmt(rel_err) : "",
                 fmt(w_trials > 0 ? static_cast<double>(w_ge_h) / w_trials : 0.0),
                 fmt(w_trials > 0 ? sum_w / w_trials : 0.0)});
        }
    }
    return {trials_tbl.str(), summary_tbl.str()};
}

// ---------------------------------------------------------------------------
// trajectory comparison
// ---------------------------------------------------------------------------

CsvOutput run_trajectory_compare(const ExperimentConfig& cfg) {
    csv::Table trials_tbl({"k", "n", "m", "c", "trial", "steps", "stop_reason",
                           "conditioned", "sup_dev_y", "sup_dev_z"});
    csv::Table summary_tbl({"k", "n", "m", "c", "trials", "conditioned",
                            "frac_dev_y_within_tol", "frac_dev_z_within_tol", "median_dev_y",
                            "dev_tol"});

    struct TrajTrial {
        bool ok = false;
        bool conditioned = false;
        long long steps = 0;
        int stop_reason = 0;
        double dev_y = 0, dev_z = 0;
    };

    for (long long n : cfg.n_values) {
        for (double c_target : cfg.c_values) {
            const long long m = edge_count(c_target, n);
            const double c = 2.0 * static_cast<double>(m) / static_cast<double>(n);
            const bool near_k = std::abs(c - cfg.k) < 0.01;
            ode::DomainSpec dom{cfg.gamma, c,
                                near_k ? ode::DomainVariant::c_to_k
                                       : ode::DomainVariant::general};

            std::vector<TrajTrial> results(cfg.trials);
            for_each_trial(cfg.trials, cfg.parallel, [&](long long t) {
                Rng rng = trial_rng(cfg.seed, cfg.k, static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(m),
                                    static_cast<std::uint64_t>(t));
                TrajTrial r;
                try {
                    peel::Trajectory trj =
                        peel::pairing_allocation_peel(cfg.k, static_cast<int>(n), m, rng, dom);
                    r.ok = true;
                    r.steps = static_cast<long long>(trj.s.size()) - 1;
                    r.stop_reason = trj.stop_reason == peel::TrajectoryStop::domain_exit;
                    r.conditioned = r.steps >= static_cast<long long>(cfg.epsilon_prime *
                                                                      static_cast<double>(n));
                    for (long long i = 0; i < static_cast<long long>(trj.s.size()); ++i) {
                        double x = static_cast<double>(i) / static_cast<double>(n);
                        if (2 * x >= c - 1e-9) break;
                        double y_star, z_star;
                        if (near_k) {
                            y_star = ode::trajectory_c_to_k(cfg.k, x);
                            z_star = -1;  // not tracked by the c -> k system
                        } else {
                            ode::OdeState st = ode::trajectory_general(cfg.k, c, x);
                            y_star = st.y;
                            z_star = st.z;
                        }
                        double sy = static_cast<double>(trj.s[i]) / static_cast<double>(n);
                        r.dev_y = std::max(r.dev_y, std::abs(sy - y_star));
                        if (z_star >= 0) {
                            double sz = static_cast<double>(trj.t[i]) / static_cast<double>(n);
                            r.dev_z = std::max(r.dev_z, std::abs(sz - z_star));
                        }
                    }
                } catch (const generation_error&) {
                    r.ok = false;
                }
                results[t] = r;
            });

            long long conditioned = 0, y_ok = 0, z_ok = 0;
            std::vector<double> devs;
            for (long long t = 0; t < cfg.trials; ++t) {
                const TrajTrial& r = results[t];
                if (!r.ok) {
                    trials_tbl.add_row({fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(t), "",
                                        "genfail", "", "", ""});
                    continue;
                }
                if (r.conditioned) {
                    ++conditioned;
                    devs.push_back(r.dev_y);
                    if (r.dev_y <= cfg.dev_tol) ++y_ok;
                    if (r.dev_z <= cfg.dev_tol) ++z_ok;
                }
                trials_tbl.add_row({fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(t), fmt(r.steps),
                                    r.stop_reason ? "domain_exit" : "light_empty",
                                    fmt(r.conditioned), fmt(r.dev_y), fmt(r.dev_z)});
            }
            std::sort(devs.begin(), devs.end());
            double median = devs.empty() ? 0.0 : devs[devs.size() / 2];
            summary_tbl.add_row(
                {fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(cfg.trials), fmt(conditioned),
                 fmt(conditioned > 0 ? static_cast<double>(y_ok) / conditioned : 0.0),
                 fmt(conditioned > 0 ? static_cast<double>(z_ok) / conditioned : 0.0),
                 fmt(median), fmt(cfg.dev_tol)});
        }
    }
    return {trials_tbl.str(), summary_tbl.str()};
}

// ---------------------------------------------------------------------------
// walks vs point-level peel
// ---------------------------------------------------------------------------

double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_distance: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

CsvOutput run_walk_vs_peel(const ExperimentConfig& cfg) {
    csv::Table trials_tbl({"k", "n", "m", "c", "trial", "z0", "trace_death", "exact_death",
                           "plus_death", "minus_death", "coupling_passed",
                           "first_violation"});
    csv::Table summary_tbl({"k", "n", "m", "c", "t", "xi", "trials", "ks_exact",
                            "coupling_pass_rate", "surv_trace", "surv_exact", "surv_plus",
                            "surv_minus"});

    struct WvpTrial {
        bool ok = false;
        long long z0 = 0;
        long long trace_death = 0, exact_death = 0, plus_death = 0, minus_death = 0;
        bool coupling_passed = false;
        long long first_violation = -1;
    };

    for (long long n : cfg.n_values) {
        for (double c_target : cfg.c_values) {
            const long long m = edge_count(c_target, n);
            const double c = 2.0 * static_cast<double>(m) / static_cast<double>(n);
            const long long t_horizon = std::max<long long>(
                1, static_cast<long long>(std::pow(static_cast<double>(n), cfg.t_exponent)));
            const double xi =
                cfg.xi_scale * static_cast<double>(t_horizon) / static_cast<double>(n);
            const double q = analytic::solve_lambda(cfg.k, c).q_kc;
            const double xi_plus = std::min(xi, 1.0 - q);
            const double xi_minus = std::min(xi, q);

            std::vector<WvpTrial> results(cfg.trials);
            for_each_trial(cfg.trials, cfg.parallel, [&](long long t) {
                Rng rng = trial_rng(cfg.seed, cfg.k, static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(m),
                                    static_cast<std::uint64_t>(t));
                WvpTrial r;
                try {
                    degseq::DegreeSequence d =
                        degseq::sample_degree_sequence(cfg.k, static_cast<int>(n), m, rng);
                    peel::PeelTrace trace = peel::deletion_procedure_points(d, rng);
                    r.ok = true;
                    r.z0 = trace.z0;
                    r.trace_death =
                        std::min<long long>(static_cast<long long>(trace.steps()), t_horizon);

                    walks::WalkParams base{walks::Variant::exact, cfg.k, c, 0.0, trace.z0};
                    walks::WalkParams plus_p{walks::Variant::plus, cfg.k, c, xi_plus, trace.z0};
                    walks::WalkParams minus_p{walks::Variant::minus, cfg.k, c, xi_minus,
                                              trace.z0};
                    auto death = [&](const walks::WalkParams& wp) {
                        if (wp.y0 <= 0) return 0LL;
                        walks::WalkPath path = walks::simulate_walk(wp, t_horizon, rng);
                        return path.died_at ? std::min(*path.died_at, t_horizon) : t_horizon;
                    };
                    r.exact_death = death(base);
                    r.plus_death = death(plus_p);
                    r.minus_death = death(minus_p);

                    walks::CouplingReport rep = walks::coupling_check(
                        trace, plus_p, minus_p,
                        std::min<long long>(t_horizon,
                                            static_cast<long long>(trace.p_hat.size())));
                    r.coupling_passed = rep.passed;
                    r.first_violation = rep.first_violation;
                } catch (const generation_error&) {
                    r.ok = false;
                }
                results[t] = r;
            });

            std::vector<double> trace_deaths, exact_deaths;
            long long pass = 0, ok = 0;
            long long surv_trace = 0, surv_exact = 0, surv_plus = 0, surv_minus = 0;
            for (long long t = 0; t < cfg.trials; ++t) {
                const WvpTrial& r = results[t];
                if (!r.ok) {
                    trials_tbl.add_row({fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(t), "", "",
                                        "", "", "", "genfail", ""});
                    continue;
                }
                ++ok;
                trace_deaths.push_back(static_cast<double>(r.trace_death));
                exact_deaths.push_back(static_cast<double>(r.exact_death));
                pass += r.coupling_passed;
                surv_trace += r.trace_death >= t_horizon;
                surv_exact += r.exact_death >= t_horizon;
                surv_plus += r.plus_death >= t_horizon;
                surv_minus += r.minus_death >= t_horizon;
                trials_tbl.add_row({fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(t), fmt(r.z0),
                                    fmt(r.trace_death), fmt(r.exact_death), fmt(r.plus_death),
                                    fmt(r.minus_death), fmt(r.coupling_passed),
                                    fmt(r.first_violation)});
            }
            double ks = ok > 0 ? ks_distance(trace_deaths, exact_deaths) : 0.0;
            summary_tbl.add_row(
                {fmt(cfg.k), fmt(n), fmt(m), fmt(c), fmt(t_horizon), fmt(xi), fmt(ok),
                 fmt(ks), fmt(ok > 0 ? static_cast<double>(pass) / ok : 0.0),
                 fmt(ok > 0 ? static_cast<double>(surv_trace) / ok : 0.0),
                 fmt(ok > 0 ? static_cast<double>(surv_exact) / ok : 0.0),
                 fmt(ok > 0 ? static_cast<double>(surv_plus) / ok : 0.0),
                 fmt(ok > 0 ? static_cast<double>(surv_minus) / ok : 0.0)});
        }
    }
    return {trials_tbl.str(), summary_tbl.str()};
}

CsvOutput run(const ExperimentConfig& cfg) {
    switch (cfg.kind) {
        case Kind::sweep:
            return run_regime_sweep(cfg);
        case Kind::gnm:
            return run_gnm_experiment(cfg);
        case Kind::trajectory_compare:
            return run_trajectory_compare(cfg);
        case Kind::walk_vs_peel:
            return run_walk_vs_peel(cfg);
    }
    throw std::logic_error("run: unreachable");
}

}  // namespace corelab::experiment
