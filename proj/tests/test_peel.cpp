#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "corelab/degseq.hpp"
#include "corelab/graphgen.hpp"
#include "corelab/peel.hpp"
#include "corelab/rng.hpp"

using namespace corelab;
using namespace corelab::peel;
using graphgen::Multigraph;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

// independent peel oracle: recompute degrees from scratch and delete any
// low-degree vertex until stable
std::set<int> brute_core_vertices(int n, const EdgeList& edges, int k) {
    std::set<int> alive;
    for (int v = 0; v < n; ++v) alive.insert(v);
    for (;;) {
        std::map<int, int> deg;
        for (auto [u, v] : edges) {
            if (!alive.count(u) || !alive.count(v)) continue;
            deg[u]++;
            deg[v]++;
        }
        int victim = -1;
        for (int v : alive)
            if (deg[v] < k) {
                victim = v;
                break;
            }
        if (victim < 0) return alive;
        alive.erase(victim);
    }
}

void enumerate_matchings(int n_points, const std::function<void(const EdgeList&)>& visit) {
    EdgeList matching;
    std::vector<char> used(n_points, 0);
    std::function<void()> rec = [&]() {
        int first = -1;
        for (int p = 0; p < n_points; ++p)
            if (!used[p]) {
                first = p;
                break;
            }
        if (first < 0) {
            visit(matching);
            return;
        }
        used[first] = 1;
        for (int q = first + 1; q < n_points; ++q) {
            if (used[q]) continue;
            used[q] = 1;
            matching.emplace_back(first, q);
            rec();
            matching.pop_back();
            used[q] = 0;
        }
        used[first] = 0;
    };
    rec();
}

Multigraph cycle(int n) {
    Multigraph g;
    g.n = n;
    for (int v = 0; v < n; ++v) g.edges.emplace_back(std::min(v, (v + 1) % n),
                                                     std::max(v, (v + 1) % n));
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

Multigraph complete(int n) {
    Multigraph g;
    g.n = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
    return g;
}

}  // namespace

TEST_CASE("kcore basics") {
    // K4 is already a 3-core
    KcoreResult r = kcore(complete(4), 3);
    CHECK(r.vertex_count == 4);
    CHECK(r.graph.edges == complete(4).edges);

    // a tree has empty 2-core
    Multigraph tree{5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}}};
    CHECK(kcore(tree, 2).vertex_count == 0);

    // C5 plus a pendant: pendant peels, cycle survives
    Multigraph g = cycle(5);
    g.n = 6;
    g.edges.emplace_back(0, 5);
    KcoreResult c = kcore(g, 2);
    CHECK(c.vertex_count == 5);
    CHECK_FALSE(c.in_core[5]);

    // loops count twice: a single loop survives k=2
    Multigraph loop{1, {{0, 0}}};
    CHECK(kcore(loop, 2).vertex_count == 1);
}

TEST_CASE("kcore equals brute-force core on random multigraphs") {
    Rng rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 4 + static_cast<int>(uniform_below(rng, 40));
        long long m = 2 + static_cast<long long>(uniform_below(rng, 3 * n));
        Multigraph g;
        g.n = n;
        for (long long e = 0; e < m; ++e) {
            int u = static_cast<int>(uniform_below(rng, n));
            int v = static_cast<int>(uniform_below(rng, n));
            g.edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        int k = 2 + static_cast<int>(uniform_below(rng, 3));
        KcoreResult r = kcore(g, k);
        std::set<int> expected = brute_core_vertices(n, g.edges, k);
        CHECK(r.vertex_count == static_cast<long long>(expected.size()));
        for (int v = 0; v < n; ++v) CHECK(static_cast<bool>(r.in_core[v]) == expected.count(v));
    }
}

TEST_CASE("w_statistic hand cases") {
    Rng rng(43);
    for (int t = 0; t < 10; ++t) {
        CHECK(w_statistic(complete(4), 3, rng) == 4);
        CHECK(w_statistic(complete(5), 3, rng) == 0);
        CHECK(w_statistic(cycle(7), 2, rng) == 7);
    }
    CHECK_THROWS_AS(w_statistic(Multigraph{2, {}}, 3, rng), std::invalid_argument);
    CHECK_THROWS_AS(w_statistic(cycle(5), 3, rng), std::invalid_argument);
}

TEST_CASE("edge deletion never enlarges the core") {
    Rng rng(47);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 10 + 2 * static_cast<int>(uniform_below(rng, 25));  // even, so kn/2 is whole
        long long m = (3 * n + 2 * static_cast<long long>(uniform_below(rng, n))) / 2;
        Multigraph g = graphgen::allocation_kcore(3, n, m, rng);
        KcoreResult before = kcore(g, 3);
        Multigraph cut = g;
        cut.edges.erase(cut.edges.begin() +
                        static_cast<long long>(uniform_below(rng, cut.edges.size())));
        KcoreResult after = kcore(cut, 3);
        for (int v = 0; v < n; ++v)
            if (after.in_core[v]) CHECK(before.in_core[v]);
    }
}

TEST_CASE("core is order-independent") {
    Rng rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 5 + static_cast<int>(uniform_below(rng, 60));
        long long m = 1 + static_cast<long long>(uniform_below(rng, 2 * n));
        Multigraph g;
        g.n = n;
        for (long long e = 0; e < m; ++e) {
            int u = static_cast<int>(uniform_below(rng, n));
            int v = static_cast<int>(uniform_below(rng, n));
            g.edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        // randomized deletion order via the brute oracle with shuffled scan
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[v] = v;
        std::shuffle(order.begin(), order.end(), rng);
        std::set<int> alive;
        for (int v = 0; v < n; ++v) alive.insert(v);
        for (;;) {
            std::map<int, int> deg;
            for (auto [u, v] : g.edges) {
                if (!alive.count(u) || !alive.count(v)) continue;
                deg[u]++;
                deg[v]++;
            }
            int victim = -1;
            for (int v : order)
                if (alive.count(v) && deg[v] < 2) {
                    victim = v;
                    break;
                }
            if (victim < 0) break;
            alive.erase(victim);
        }
        KcoreResult r = kcore(g, 2);
        CHECK(r.vertex_count == static_cast<long long>(alive.size()));
    }
}

TEST_CASE("deletion procedure on d=(3,3): full cascade, W = 2") {
    Rng rng(59);
    for (int t = 0; t < 500; ++t) {
        PeelTrace trace = deletion_procedure_points({{3, 3}, 3, 3}, rng);
        CHECK(trace.w == 2);
        CHECK(trace.terminated == PeelEnd::exhausted_core_empty);
        CHECK((trace.z0 == 1 || trace.z0 == 4));  // same-bin or cross-bin start
    }
}

TEST_CASE("deletion procedure stops immediately when no bin falls below k") {
    // all degrees >= k+2: iteration 0 cannot push any bin below k, even when
    // both points land in the same bin
    Rng rng(61);
    degseq::DegreeSequence d{{5, 5, 5, 5}, 3, 10};
    for (int t = 0; t < 200; ++t) {
        PeelTrace trace = deletion_procedure_points(d, rng);
        CHECK(trace.z0 == 0);
        CHECK(trace.w == 0);
        CHECK(trace.steps() == 0);
        CHECK(trace.terminated == PeelEnd::cascade_stopped);
    }
}

TEST_CASE("trace invariants: Z range, Y recurrence, W formula, p sandwich") {
    Rng rng(67);
    const int k = 3, n = 2000;
    const long long m = 4000;  // c = 4
    for (int t = 0; t < 30; ++t) {
        degseq::DegreeSequence d = degseq::sample_degree_sequence(k, n, m, rng);
        long long dk0 = 0;
        for (int x : d.degrees) dk0 += x == k;
        PeelTrace trace = deletion_procedure_points(d, rng);

        CHECK((trace.z0 == 0 || trace.z0 == k - 2 || trace.z0 == k - 1 ||
               trace.z0 == 2 * (k - 1)));
        long long y = trace.z0, w = trace.z0 > 0 ? (trace.z0 + k - 2) / (k - 1) : 0;
        for (std::size_t j = 0; j < trace.steps(); ++j) {
            int z = trace.z[j];
            CHECK((z == -1 || z == 0 || z == k - 1));
            y += z - 1;
            CHECK(trace.y[j] == y);
            if (z > 0) w += (z + k - 2) / (k - 1);
            auto [pj, pj_prime] = trace.p_hat[j];
            CHECK(pj >= 0.0);
            CHECK(pj <= 1.0);
            CHECK(pj_prime >= 0.0);
            CHECK(pj_prime <= 1.0);
            // p_j sandwich: the size-k bin count moves by at most one per
            // deleted point, and j loop iterations deleted 2j + 2 points of
            // which at most j + 2 sat in full bins
            double denom = 2.0 * m - 2.0 * (j + 1) - 2.0;
            if (denom > 0) {
                double lo = k * (static_cast<double>(dk0) - (j + 3)) / denom;
                double hi = k * (static_cast<double>(dk0) + (j + 3)) / denom;
                CHECK(pj >= std::min(lo, 0.0));
                CHECK(pj >= lo - 1e-12);
                CHECK(pj <= hi + 1e-12);
            }
        }
        CHECK(trace.y.empty() ? trace.z0 == 0 : trace.y.back() == 0);
        CHECK(trace.w == w);
    }
}

TEST_CASE("trace Z frequencies are consistent with recorded probabilities") {
    Rng rng(71);
    const int k = 3, n = 3000;
    const long long m = 5250;  // c = 3.5: long cascades are common
    double expected_up = 0, var_up = 0, expected_down = 0, var_down = 0;
    long long observed_up = 0, observed_down = 0;
    for (int t = 0; t < 60; ++t) {
        degseq::DegreeSequence d = degseq::sample_degree_sequence(k, n, m, rng);
        PeelTrace trace = deletion_procedure_points(d, rng);
        for (std::size_t j = 0; j < trace.steps(); ++j) {
            auto [pj, pj_prime] = trace.p_hat[j];
            expected_up += pj;
            var_up += pj * (1 - pj);
            expected_down += pj_prime;
            var_down += pj_prime * (1 - pj_prime);
            observed_up += trace.z[j] == k - 1;
            observed_down += trace.z[j] == -1;
        }
    }
    CHECK(std::abs(observed_up - expected_up) < 4 * std::sqrt(var_up) + 1);
    CHECK(std::abs(observed_down - expected_down) < 4 * std::sqrt(var_down) + 1);
}

TEST_CASE("W distribution matches exhaustive matching enumeration, 3-regular n=4") {
    // exact law of W: all 10395 matchings on 12 points, every removable edge
    const std::vector<int> degrees(4, 3);
    std::vector<int> bin_of;
    for (int v = 0; v < 4; ++v)
        for (int i = 0; i < 3; ++i) bin_of.push_back(v);

    std::map<long long, double> exact;
    long long matchings = 0;
    enumerate_matchings(12, [&](const EdgeList& matching) {
        ++matchings;
        for (std::size_t drop = 0; drop < matching.size(); ++drop) {
            EdgeList edges;
            for (std::size_t e = 0; e < matching.size(); ++e) {
                if (e == drop) continue;
                auto [p, q] = matching[e];
                edges.emplace_back(std::min(bin_of[p], bin_of[q]),
                                   std::max(bin_of[p], bin_of[q]));
            }
            std::set<int> core = brute_core_vertices(4, edges, 3);
            exact[4 - static_cast<long long>(core.size())] += 1.0;
        }
    });
    CHECK(matchings == 10395);
    for (auto& [w, p] : exact) p /= static_cast<double>(matchings) * 6.0;

    // sample both representations
    degseq::DegreeSequence d{degrees, 3, 6};
    const int trials = 100000;
    std::map<long long, long long> via_trace, via_graph;
    Rng rng(73);
    for (int t = 0; t < trials; ++t) {
        ++via_trace[deletion_procedure_points(d, rng).w];
        Multigraph g = graphgen::pairing_multigraph(d, rng).second;
        ++via_graph[w_statistic(g, 3, rng)];
    }
    for (const auto& [w, p] : exact) {
        double se = std::sqrt(p * (1 - p) / trials);
        CHECK(std::abs(static_cast<double>(via_trace[w]) / trials - p) < 4 * se + 1e-9);
        CHECK(std::abs(static_cast<double>(via_graph[w]) / trials - p) < 4 * se + 1e-9);
    }
}

TEST_CASE("vertex-level procedure equals w_statistic for the same edge") {
    Rng rng(79);
    for (int trial = 0; trial < 100; ++trial) {
        Multigraph g = graphgen::uniform_simple_kcore(3, 50, 100, rng);
        std::size_t e = uniform_below(rng, g.edges.size());
        long long w = w_statistic_from_edge(g, 3, e);
        VertexPeelResult r = deletion_procedure_vertex_from_edge(g, 3, e, rng);
        CHECK(r.removed_count == w);
        CHECK(r.step_count == r.removed_count);
    }
}

TEST_CASE("vertex-level procedure hand cases") {
    Rng rng(83);
    CHECK(deletion_procedure_vertex(complete(4), 3, rng).removed_count == 4);
    VertexPeelResult k5 = deletion_procedure_vertex(complete(5), 3, rng);
    CHECK(k5.removed_count == 0);
    CHECK(k5.step_count == 0);
    CHECK_THROWS_AS(deletion_procedure_vertex(cycle(5), 3, rng), std::invalid_argument);
}

TEST_CASE("pairing-allocation peel invariants") {
    Rng rng(89);
    const int k = 3, n = 1000;
    const long long m = 1600;  // c = 3.2
    for (int t = 0; t < 100; ++t) {
        Trajectory trj = pairing_allocation_peel(k, n, m, rng);
        REQUIRE(!trj.s.empty());
        CHECK(trj.t[0] >= n - 2);
        CHECK(trj.t[0] <= n);
        CHECK(trj.s[0] >= 2 * m - 2 - 2 * (k - 1));
        for (std::size_t i = 0; i < trj.s.size(); ++i) {
            CHECK(trj.w_pts[i] ==
                  2 * m - 2 * static_cast<long long>(i) - 2 - trj.s[i]);
            if (i > 0) {
                CHECK(std::abs(trj.s[i] - trj.s[i - 1]) <= k);
                CHECK(std::abs(trj.t[i] - trj.t[i - 1]) <= 1);
            }
        }
        CHECK(trj.stop_reason == TrajectoryStop::light_empty);
        CHECK(trj.w_pts.back() == 0);
    }
}

TEST_CASE("pairing-allocation peel empties the core in the c -> k regime") {
    // conditioned on a long cascade, the terminal core is empty nearly always
    Rng rng(97);
    const int k = 3, n = 20000;
    const long long m = 30500;  // c = 3.05
    int conditioned = 0, empty = 0;
    for (int t = 0; t < 40; ++t) {
        Trajectory trj = pairing_allocation_peel(k, n, m, rng);
        if (static_cast<long long>(trj.s.size()) - 1 >=
            static_cast<long long>(0.05 * n)) {
            ++conditioned;
            if (trj.t.back() == 0) ++empty;
        }
    }
    REQUIRE(conditioned >= 10);
    CHECK(empty >= static_cast<int>(0.95 * conditioned));
}
