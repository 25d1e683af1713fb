#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "corelab/analytic.hpp"
#include "corelab/degseq.hpp"
#include "corelab/errors.hpp"
#include "corelab/rng.hpp"

using namespace corelab;
using namespace corelab::degseq;

namespace {

// brute-force realizability: does any simple graph on n labeled vertices that
// avoids `forbidden` have exactly this degree vector?
bool brute_force_realizable(const std::vector<int>& d,
                            const std::vector<std::pair<int, int>>& forbidden) {
    const int n = static_cast<int>(d.size());
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool banned = false;
            for (auto [a, b] : forbidden)
                banned = banned || (std::minmax(a, b) == std::minmax(u, v));
            if (!banned) slots.emplace_back(u, v);
        }
    const int s = static_cast<int>(slots.size());
    for (long long mask = 0; mask < (1LL << s); ++mask) {
        std::vector<int> deg(n, 0);
        for (int i = 0; i < s; ++i)
            if (mask & (1LL << i)) {
                deg[slots[i].first]++;
                deg[slots[i].second]++;
            }
        if (deg == d) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("degree_stats arithmetic") {
    DegreeStats st = degree_stats({{3, 3, 3, 3}, 3, 6});
    CHECK(st.counts.at(3) == 4);
    CHECK(st.eta == doctest::Approx(2.0));

    // k-regular: eta = k-1 exactly
    for (int k : {3, 4, 5}) {
        int n = 12;
        DegreeSequence d{std::vector<int>(n, k), k, static_cast<long long>(k) * n / 2};
        CHECK(degree_stats(d).eta == doctest::Approx(k - 1.0));
    }

    CHECK(degree_stats({{3, 4, 5}, 3, 6}).eta == doctest::Approx(19.0 / 6.0));
}

TEST_CASE("sample_degree_sequence degenerate and invariants") {
    Rng rng(7);
    // unique element of D_3(2,3)
    for (int i = 0; i < 20; ++i) {
        DegreeSequence d = sample_degree_sequence(3, 2, 3, rng);
        CHECK(d.degrees == std::vector<int>{3, 3});
    }
    CHECK_THROWS_AS(sample_degree_sequence(3, 4, 5, rng), std::invalid_argument);

    for (int i = 0; i < 50; ++i) {
        DegreeSequence d = sample_degree_sequence(3, 40, 70, rng);
        long long sum = 0;
        for (int x : d.degrees) {
            CHECK(x >= 3);
            sum += x;
        }
        CHECK(sum == 140);
    }
}

TEST_CASE("conditioned law matches exact enumeration (k=3, n=3, m=6)") {
    // conditioned on the sum, lambda^12 cancels: P(d) proportional to 1/(d1! d2! d3!)
    std::map<std::vector<int>, double> exact;
    double total = 0;
    for (int d1 = 3; d1 <= 6; ++d1)
        for (int d2 = 3; d2 <= 6; ++d2) {
            int d3 = 12 - d1 - d2;
            if (d3 < 3) continue;
            double w = 1.0 / (std::tgamma(d1 + 1.0) * std::tgamma(d2 + 1.0) *
                              std::tgamma(d3 + 1.0));
            exact[{d1, d2, d3}] = w;
            total += w;
        }
    for (auto& [d, w] : exact) w /= total;

    const int trials = 20000;
    std::map<std::vector<int>, int> hits;
    Rng rng(123);
    for (int t = 0; t < trials; ++t) ++hits[sample_degree_sequence(3, 3, 6, rng).degrees];

    for (const auto& [d, p] : exact) {
        double se = std::sqrt(p * (1 - p) / trials);
        double observed = static_cast<double>(hits[d]) / trials;
        CHECK(std::abs(observed - p) < 4 * se + 1e-9);
    }
}

TEST_CASE("empirical degree marginals match TP pmf at n = 1e5") {
    const int k = 3, n = 100000;
    const long long m = 200000;  // c = 4
    Rng rng(99);
    DegreeSequence d = sample_degree_sequence(k, n, m, rng);
    long long sum = 0;
    for (int x : d.degrees) sum += x;
    CHECK(sum == 2 * m);  // mean degree is exactly 2m/n by conditioning

    analytic::TruncatedPoissonParams tp{k, analytic::solve_lambda(k, 4.0).lambda_kc};
    DegreeStats st = degree_stats(d);
    for (int j = k; j <= k + 5; ++j) {
        double p = analytic::tp_pmf(tp, j);
        double se = std::sqrt(p * (1 - p) / n);
        long long dj = st.counts.count(j) ? st.counts.at(j) : 0;
        CHECK(std::abs(static_cast<double>(dj) / n - p) < 3 * se);
    }
}

TEST_CASE("typicality flags") {
    // k-regular: in_check for alpha = 0.3, R = e^{0.3k} + 1
    for (int k : {3, 4}) {
        int n = 50;
        DegreeSequence d{std::vector<int>(n, k), k, static_cast<long long>(k) * n / 2};
        auto flags = typicality(d, 0.1, 0.2, 0.3, std::exp(0.3 * k) + 1.0);
        CHECK(flags.in_check);
    }
    // a single sqrt(n) degree breaks the hat set's max-degree condition
    {
        int n = 100;
        std::vector<int> deg(n, 3);
        deg[0] = 10;  // n^{0.5}
        deg[1] = 4;
        DegreeSequence d{deg, 3, 154};
        auto flags = typicality(d, 10.0, 0.2, 0.3, 1e9);
        CHECK_FALSE(flags.in_hat);
        CHECK(flags.in_tilde);  // phi = 10 is generous
    }
    CHECK_THROWS_AS(typicality({{3, 3}, 3, 3}, 0.1, 0.5, 0.3, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(typicality({{3, 3}, 3, 3}, 0.1, 0.2, 0.5, 10.0), std::invalid_argument);
}

TEST_CASE("typicality Monte Carlo calibration (tilde set)") {
    // sampled sequences should land in the tilde set with phi = n^{-1/4} log n
    const int k = 3, n = 10000, trials = 300;
    const long long m = 20000;  // c = 4
    const double phi = std::pow(n, -0.25) * std::log(static_cast<double>(n));
    int in_tilde = 0;
    Rng rng(2024);
    for (int t = 0; t < trials; ++t) {
        DegreeSequence d = sample_degree_sequence(k, n, m, rng);
        if (typicality(d, phi, 0.2, 0.3, 100.0).in_tilde) ++in_tilde;
    }
    CHECK(in_tilde >= static_cast<int>(0.95 * trials));
}

TEST_CASE("eta lower bound with equality iff regular") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        int k = 3 + static_cast<int>(uniform_below(rng, 3));
        int n = 4 + static_cast<int>(uniform_below(rng, 20));
        long long m = (static_cast<long long>(k) * n + 2 * uniform_below(rng, 30)) / 2;
        if (2 * m < static_cast<long long>(k) * n || (static_cast<long long>(k) * n) % 2 != 0)
            m = (static_cast<long long>(k) * n + 2 * (1 + uniform_below(rng, 30))) / 2;
        DegreeSequence d;
        try {
            d = sample_degree_sequence(k, n, m, rng);
        } catch (const std::exception&) {
            continue;
        }
        double eta = degree_stats(d).eta;
        bool regular = std::all_of(d.degrees.begin(), d.degrees.end(),
                                   [&](int x) { return x == d.degrees[0]; });
        if (regular)
            CHECK(eta == doctest::Approx(k - 1.0));
        else
            CHECK(eta > k - 1.0);
    }
}

TEST_CASE("erdos_gallai examples") {
    CHECK(erdos_gallai_graphical({3, 3, 3, 3}));
    CHECK_FALSE(erdos_gallai_graphical({3, 3, 3, 1}));
    CHECK(erdos_gallai_graphical({3, 1, 1, 1}));
    CHECK(erdos_gallai_graphical({}));
    CHECK(erdos_gallai_graphical({0, 0}));
    CHECK_FALSE(erdos_gallai_graphical({-1, 1}));
    CHECK_FALSE(erdos_gallai_graphical({5, 1}));  // exceeds n-1
    CHECK_FALSE(erdos_gallai_graphical({1}));     // odd sum
}

TEST_CASE("erdos_gallai agrees with brute force (n <= 6, degrees <= 5)") {
    for (int n = 1; n <= 6; ++n) {
        // realizable multisets from all labeled graphs on n vertices
        std::set<std::vector<int>> realizable;
        int s = n * (n - 1) / 2;
        std::vector<std::pair<int, int>> slots;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
        for (long long mask = 0; mask < (1LL << s); ++mask) {
            std::vector<int> deg(n, 0);
            for (int i = 0; i < s; ++i)
                if (mask & (1LL << i)) {
                    deg[slots[i].first]++;
                    deg[slots[i].second]++;
                }
            std::sort(deg.begin(), deg.end(), std::greater<int>());
            realizable.insert(deg);
        }
        // every descending sequence over {0..n-1}
        std::vector<int> seq(n, 0);
        auto next = [&]() {
            for (int i = n - 1; i >= 0; --i) {
                if (seq[i] < (i == 0 ? n - 1 : seq[i - 1])) {
                    ++seq[i];
                    for (int j = i + 1; j < n; ++j) seq[j] = 0;
                    return true;
                }
            }
            return false;
        };
        do {
            CHECK(erdos_gallai_graphical(seq) == realizable.count(seq));
        } while (next());
    }
}

TEST_CASE("simple_graph_exists_avoiding examples") {
    CHECK(simple_graph_exists_avoiding({3, 3, 3, 3, 3, 3}, {{0, 1}}));
    CHECK_FALSE(simple_graph_exists_avoiding({1, 1}, {{0, 1}}));
    CHECK(simple_graph_exists_avoiding({2, 2, 2, 2}, {}));
    CHECK_THROWS_AS(simple_graph_exists_avoiding({1, 1, 1, 1}, {{0, 1}, {2, 3}}),
                    std::invalid_argument);
}

TEST_CASE("simple_graph_exists_avoiding agrees with brute force on n = 5") {
    const int n = 5;
    std::vector<std::vector<std::pair<int, int>>> forbidden_sets = {
        {{0, 1}}, {{0, 1}, {0, 2}}, {{0, 1}, {0, 2}, {0, 3}}, {{2, 4}, {2, 0}}};
    for (const auto& forb : forbidden_sets) {
        std::vector<int> d(n, 0);
        auto advance = [&]() {
            for (int i = 0; i < n; ++i) {
                if (d[i] < n - 1) {
                    ++d[i];
                    for (int j = 0; j < i; ++j) d[j] = 0;
                    return true;
                }
            }
            return false;
        };
        do {
            bool expected = brute_force_realizable(d, forb);
            CHECK(simple_graph_exists_avoiding(d, forb) == expected);
        } while (advance());
    }
}
