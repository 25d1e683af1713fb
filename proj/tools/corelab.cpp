#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corelab/analytic.hpp"
#include "corelab/csv.hpp"
#include "corelab/degseq.hpp"
#include "corelab/errors.hpp"
#include "corelab/experiment.hpp"
#include "corelab/graphgen.hpp"
#include "corelab/ode.hpp"
#include "corelab/peel.hpp"
#include "corelab/rng.hpp"
#include "corelab/walks.hpp"

namespace {

using namespace corelab;
using csv::fmt;

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    out << text;
}

int cmd_thresholds(int k_min, int k_max, const std::string& out_path) {
    csv::Table tbl({"k", "c_k", "mu_star", "c_k_prime", "q_at_ckp"});
    for (int k = k_min; k <= k_max; ++k) {
        analytic::Thresholds th = analytic::thresholds(k);
        double q = analytic::solve_lambda(k, th.c_k_prime).q_kc;
        tbl.add_row({fmt(k), fmt(th.c_k), fmt(th.mu_star), fmt(th.c_k_prime), fmt(q)});
    }
    write_output(tbl.str(), out_path);
    return 0;
}

int cmd_degseq(int k, int n, long long m, long long trials, std::uint64_t seed,
               const std::string& out_path) {
    std::ostringstream out;
    Rng rng(seed);
    for (long long t = 0; t < trials; ++t) {
        degseq::DegreeSequence d = degseq::sample_degree_sequence(k, n, m, rng);
        for (int i = 0; i < d.n(); ++i) {
            if (i) out << ' ';
            out << d.degrees[i];
        }
        out << '\n';
    }
    write_output(out.str(), out_path);
    return 0;
}

int cmd_gen(const std::string& model, int k, int n, long long m, std::uint64_t seed,
            const std::string& degrees_arg, int max_retries, const std::string& out_path) {
    Rng rng(seed);
    graphgen::Multigraph g;
    if (model == "pairing") {
        degseq::DegreeSequence d;
        if (!degrees_arg.empty()) {
            std::istringstream in(degrees_arg);
            long long sum = 0;
            for (int x; in >> x;) {
                d.degrees.push_back(x);
                sum += x;
            }
            if (sum % 2 != 0) throw std::invalid_argument("--degrees must sum to an even number");
            d.k = k;
            d.m = sum / 2;
        } else {
            d = degseq::sample_degree_sequence(k, n, m, rng);
        }
        g = graphgen::pairing_multigraph(d, rng).second;
    } else if (model == "allocation") {
        g = graphgen::allocation_kcore(k, n, m, rng);
    } else if (model == "gnm") {
        g = graphgen::gnm(n, m, rng);
    } else if (model == "simple-kcore") {
        g = graphgen::uniform_simple_kcore(k, n, m, rng, max_retries);
    } else {
        throw std::invalid_argument("unknown model '" + model + "'");
    }
    std::ostringstream out;
    for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
    write_output(out.str(), out_path);
    return 0;
}

int cmd_peel(int k, int n, long long m, long long trials, std::uint64_t seed,
             const std::string& trace_path, const std::string& out_path) {
    csv::Table trace_tbl({"trial", "j", "Zj", "Yj", "pj", "pj_prime"});
    csv::Table summary_tbl({"trial", "W", "terminated"});
    for (long long t = 0; t < trials; ++t) {
        Rng rng = trial_rng(seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(t));
        degseq::DegreeSequence d = degseq::sample_degree_sequence(k, n, m, rng);
        peel::PeelTrace trace = peel::deletion_procedure_points(d, rng);
        trace_tbl.add_row({fmt(t), "0", fmt(trace.z0), fmt(trace.y0()), "", ""});
        for (std::size_t j = 0; j < trace.steps(); ++j) {
            trace_tbl.add_row({fmt(t), fmt(static_cast<long long>(j + 1)), fmt(trace.z[j]),
                               fmt(trace.y[j]), fmt(trace.p_hat[j].first),
                               fmt(trace.p_hat[j].second)});
        }
        summary_tbl.add_row({fmt(t), fmt(trace.w),
                             trace.terminated == peel::PeelEnd::exhausted_core_empty
                                 ? "exhausted_core_empty"
                                 : "cascade_stopped"});
    }
    if (!trace_path.empty()) write_output(trace_tbl.str(), trace_path);
    write_output(summary_tbl.str(), out_path);
    return 0;
}

int cmd_walk(const std::string& variant, int k, double c, double xi, long long y0,
             long long horizon, long long trials, std::uint64_t seed,
             const std::string& out_path) {
    walks::WalkParams p;
    if (variant == "exact")
        p.variant = walks::Variant::exact;
    else if (variant == "plus")
        p.variant = walks::Variant::plus;
    else if (variant == "minus")
        p.variant = walks::Variant::minus;
    else
        throw std::invalid_argument("unknown variant '" + variant + "'");
    p.k = k;
    p.c = c;
    p.xi = xi;
    p.y0 = y0;
    csv::Table tbl({"trial", "died_at", "survived"});
    for (long long t = 0; t < trials; ++t) {
        Rng rng = trial_rng(seed, static_cast<std::uint64_t>(k), 0, 0,
                            static_cast<std::uint64_t>(t));
        walks::WalkPath path = walks::simulate_walk(p, horizon, rng);
        tbl.add_row({fmt(t), path.died_at ? fmt(*path.died_at) : "",
                     fmt(path.survived_horizon)});
    }
    write_output(tbl.str(), out_path);
    return 0;
}

int cmd_trajectory(int k, double C, double gamma, double step, const std::string& out_path) {
    csv::Table tbl({"x", "y_star", "z_star", "mu"});
    const bool near_k = std::abs(C - k) < 0.01;
    ode::DomainSpec dom{gamma, C,
                        near_k ? ode::DomainVariant::c_to_k : ode::DomainVariant::general};
    for (double x = 0;; x += step) {
        if (near_k) {
            if (2 * x >= k) break;
            double y = ode::trajectory_c_to_k(k, x);
            if (!dom.contains(k, x, y, 0)) break;
            tbl.add_row({fmt(x), fmt(y), "", ""});
        } else {
            if (2 * x >= C) break;
            ode::OdeState st = ode::trajectory_general(k, C, x);
            if (!dom.contains(k, st.x, st.y, st.z)) break;
            tbl.add_row({fmt(st.x), fmt(st.y), fmt(st.z), fmt(st.mu)});
        }
    }
    write_output(tbl.str(), out_path);
    return 0;
}

int run_config_command(const std::string& config_path, const std::string& out_override,
                       std::optional<std::uint64_t> seed_override, bool serial, bool gap,
                       const std::vector<experiment::Kind>& allowed) {
    experiment::ExperimentConfig cfg = experiment::ExperimentConfig::from_file(config_path);
    if (seed_override) cfg.seed = *seed_override;
    if (!out_override.empty()) cfg.output_path = out_override;
    if (serial) cfg.parallel = false;
    bool kind_ok = false;
    for (auto k : allowed) kind_ok = kind_ok || cfg.kind == k;
    if (!kind_ok)
        throw std::invalid_argument("config kind does not match this subcommand");

    experiment::CsvOutput out =
        gap ? experiment::gap_statistic(cfg) : experiment::run(cfg);
    write_output(out.main_csv, cfg.output_path);
    if (!out.summary_csv.empty()) {
        if (cfg.output_path.empty() || cfg.output_path == "-")
            std::cout << out.summary_csv;
        else
            write_output(out.summary_csv, cfg.output_path + ".summary.csv");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corelab: random k-core robustness simulations"};
    app.require_subcommand(1);

    // thresholds
    auto* sc_thresholds = app.add_subcommand("thresholds", "print c_k, mu*, c_k' as CSV");
    int th_k = 0, th_kmin = 3, th_kmax = 10;
    std::string th_out;
    sc_thresholds->add_option("--k", th_k, "single k (overrides the range)");
    sc_thresholds->add_option("--k-min", th_kmin, "range start (default 3)");
    sc_thresholds->add_option("--k-max", th_kmax, "range end (default 10)");
    sc_thresholds->add_option("--out", th_out, "output file (default stdout)");

    // degseq
    auto* sc_degseq = app.add_subcommand("degseq", "sample conditioned degree sequences");
    int ds_k = 3, ds_n = 10;
    long long ds_m = 20, ds_trials = 1;
    std::uint64_t ds_seed = 1;
    std::string ds_out;
    sc_degseq->add_option("--k", ds_k)->required();
    sc_degseq->add_option("--n", ds_n)->required();
    sc_degseq->add_option("--m", ds_m)->required();
    sc_degseq->add_option("--trials", ds_trials);
    sc_degseq->add_option("--seed", ds_seed);
    sc_degseq->add_option("--out", ds_out);

    // gen
    auto* sc_gen = app.add_subcommand("gen", "generate a random graph, edge list output");
    std::string gen_model = "allocation", gen_degrees, gen_out;
    int gen_k = 3, gen_n = 10, gen_retries = 100000;
    long long gen_m = 20;
    std::uint64_t gen_seed = 1;
    sc_gen->add_option("--model", gen_model, "pairing|allocation|gnm|simple-kcore")
        ->required();
    sc_gen->add_option("--k", gen_k);
    sc_gen->add_option("--n", gen_n);
    sc_gen->add_option("--m", gen_m);
    sc_gen->add_option("--seed", gen_seed);
    sc_gen->add_option("--degrees", gen_degrees, "explicit degrees for --model pairing");
    sc_gen->add_option("--max-retries", gen_retries);
    sc_gen->add_option("--out", gen_out);

    // peel
    auto* sc_peel = app.add_subcommand("peel", "point-level deletion procedure traces");
    int pl_k = 3, pl_n = 10;
    long long pl_m = 20, pl_trials = 1;
    std::uint64_t pl_seed = 1;
    std::string pl_trace, pl_out;
    sc_peel->add_option("--k", pl_k)->required();
    sc_peel->add_option("--n", pl_n)->required();
    sc_peel->add_option("--m", pl_m)->required();
    sc_peel->add_option("--trials", pl_trials);
    sc_peel->add_option("--seed", pl_seed);
    sc_peel->add_option("--trace-out", pl_trace, "per-iteration trace CSV file");
    sc_peel->add_option("--out", pl_out, "summary CSV (default stdout)");

    // walk
    auto* sc_walk = app.add_subcommand("walk", "simulate the Z/Z+/Z- walks");
    std::string wk_variant = "exact", wk_out;
    int wk_k = 3;
    double wk_c = 4.0, wk_xi = 0.0;
    long long wk_y0 = 1, wk_horizon = 10000, wk_trials = 1;
    std::uint64_t wk_seed = 1;
    sc_walk->add_option("--variant", wk_variant, "exact|plus|minus");
    sc_walk->add_option("--k", wk_k)->required();
    sc_walk->add_option("--c", wk_c)->required();
    sc_walk->add_option("--xi", wk_xi);
    sc_walk->add_option("--y0", wk_y0);
    sc_walk->add_option("--horizon", wk_horizon);
    sc_walk->add_option("--trials", wk_trials);
    sc_walk->add_option("--seed", wk_seed);
    sc_walk->add_option("--out", wk_out);

    // trajectory
    auto* sc_traj = app.add_subcommand("trajectory", "closed-form ODE trajectories");
    int tr_k = 3;
    double tr_C = 3.2, tr_gamma = 0.05, tr_step = 1e-3;
    std::string tr_out;
    sc_traj->add_option("--k", tr_k)->required();
    sc_traj->add_option("--C", tr_C)->required();
    sc_traj->add_option("--gamma", tr_gamma);
    sc_traj->add_option("--step", tr_step);
    sc_traj->add_option("--out", tr_out);

    // config-driven experiments
    std::string cfg_path, cfg_out;
    std::uint64_t cfg_seed = 0;
    bool cfg_has_seed = false, cfg_serial = false, cfg_gap = false;
    auto add_config_opts = [&](CLI::App* sc, bool with_gap) {
        sc->add_option("--config", cfg_path, "JSON config file")->required();
        sc->add_option("--seed", cfg_seed)->each([&](const std::string&) { cfg_has_seed = true; });
        sc->add_option("--out", cfg_out, "override config output_path");
        sc->add_flag("--serial", cfg_serial, "disable the OpenMP trial loop");
        if (with_gap)
            sc->add_flag("--gap", cfg_gap, "emit the no-small-core gap statistic instead");
    };
    auto* sc_sweep = app.add_subcommand("sweep", "three-regime W sweep");
    add_config_opts(sc_sweep, true);
    auto* sc_gnm = app.add_subcommand("gnm", "G(n,m) k-core robustness experiment");
    add_config_opts(sc_gnm, false);
    auto* sc_compare = app.add_subcommand("compare",
                                          "trajectory_compare / walk_vs_peel experiments");
    add_config_opts(sc_compare, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sc_thresholds->parsed()) {
            if (th_k > 0) th_kmin = th_kmax = th_k;
            return cmd_thresholds(th_kmin, th_kmax, th_out);
        }
        if (sc_degseq->parsed())
            return cmd_degseq(ds_k, ds_n, ds_m, ds_trials, ds_seed, ds_out);
        if (sc_gen->parsed())
            return cmd_gen(gen_model, gen_k, gen_n, gen_m, gen_seed, gen_degrees,
                           gen_retries, gen_out);
        if (sc_peel->parsed())
            return cmd_peel(pl_k, pl_n, pl_m, pl_trials, pl_seed, pl_trace, pl_out);
        if (sc_walk->parsed())
            return cmd_walk(wk_variant, wk_k, wk_c, wk_xi, wk_y0, wk_horizon, wk_trials,
                            wk_seed, wk_out);
        if (sc_traj->parsed()) return cmd_trajectory(tr_k, tr_C, tr_gamma, tr_step, tr_out);
        std::optional<std::uint64_t> seed_override;
        if (cfg_has_seed) seed_override = cfg_seed;
        if (sc_sweep->parsed())
            return run_config_command(cfg_path, cfg_out, seed_override, cfg_serial, cfg_gap,
                                      {experiment::Kind::sweep});
        if (sc_gnm->parsed())
            return run_config_command(cfg_path, cfg_out, seed_override, cfg_serial, false,
                                      {experiment::Kind::gnm});
        if (sc_compare->parsed())
            return run_config_command(cfg_path, cfg_out, seed_override, cfg_serial, false,
                                      {experiment::Kind::trajectory_compare,
                                       experiment::Kind::walk_vs_peel});
    } catch (const corelab::generation_error& e) {
        std::cerr << "generation failure: " << e.what() << '\n';
        return 3;
    } catch (const corelab::numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 2;
}
