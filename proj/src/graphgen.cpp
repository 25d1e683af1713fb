#include "corelab/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "corelab/errors.hpp"

namespace corelab::graphgen {

std::vector<int> Multigraph::degrees() const {
    std::vector<int> deg(n, 0);
    for (auto [u, v] : edges) {
        deg[u]++;
        deg[v]++;  // a loop hits the same vertex twice
    }
    return deg;
}

int Multigraph::min_degree() const {
    auto deg = degrees();
    return deg.empty() ? 0 : *std::min_element(deg.begin(), deg.end());
}

std::pair<Pairing, Multigraph> pairing_multigraph(const degseq::DegreeSequence& d, Rng& rng) {
    const int n = d.n();
    const long long pts = 2 * d.m;
    Pairing pairing;
    pairing.n_points = static_cast<int>(pts);
    pairing.bin_of.resize(pts);
    {
        long long p = 0;
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < d.degrees[v]; ++i) pairing.bin_of[p++] = v;
        if (p != pts)
            throw std::invalid_argument("pairing_multigraph: degree sum != 2m");
    }
    // shuffle then pair consecutive points: uniform over all (2m-1)!! matchings
    std::vector<int> perm(pts);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle_vec(perm, rng);

    Multigraph g;
    g.n = n;
    g.edges.reserve(d.m);
    pairing.matching.reserve(d.m);
    for (long long t = 0; t < d.m; ++t) {
        int p1 = perm[2 * t], p2 = perm[2 * t + 1];
        if (p1 > p2) std::swap(p1, p2);
        pairing.matching.emplace_back(p1, p2);
        int u = pairing.bin_of[p1], v = pairing.bin_of[p2];
        if (u > v) std::swap(u, v);
        g.edges.emplace_back(u, v);
    }
    // canonical edge order keeps traces reproducible under a fixed seed
    std::sort(pairing.matching.begin(), pairing.matching.end());
    std::sort(g.edges.begin(), g.edges.end());
    return {std::move(pairing), std::move(g)};
}

namespace {

void bins_and_shuffled_points(const degseq::DegreeSequence& d, Rng& rng,
                              std::vector<int>& bin_of, std::vector<int>& perm) {
    const long long pts = 2 * d.m;
    bin_of.resize(pts);
    long long p = 0;
    for (int v = 0; v < d.n(); ++v)
        for (int i = 0; i < d.degrees[v]; ++i) bin_of[p++] = v;
    if (p != pts) throw std::invalid_argument("degree sum != 2m");
    perm.resize(pts);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle_vec(perm, rng);
}

// contraction without materializing the Pairing; same draw sequence as
// pairing_multigraph, so results agree seed-for-seed
Multigraph contract_random_matching(const degseq::DegreeSequence& d, Rng& rng) {
    std::vector<int> bin_of, perm;
    bins_and_shuffled_points(d, rng, bin_of, perm);
    Multigraph g;
    g.n = d.n();
    g.edges.reserve(d.m);
    for (long long t = 0; t < d.m; ++t) {
        int u = bin_of[perm[2 * t]], v = bin_of[perm[2 * t + 1]];
        if (u > v) std::swap(u, v);
        g.edges.emplace_back(u, v);
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

}  // namespace

Multigraph allocation_kcore(int k, int n, long long m, Rng& rng) {
    degseq::DegreeSequence d = degseq::sample_degree_sequence(k, n, m, rng);
    return contract_random_matching(d, rng);
}

Multigraph gnm(int n, long long m, Rng& rng) {
    const long long max_m = static_cast<long long>(n) * (n - 1) / 2;
    if (m > max_m) throw std::invalid_argument("gnm: m exceeds C(n,2)");
    Multigraph g;
    g.n = n;
    g.edges.reserve(m);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(2 * m));
    while (static_cast<long long>(g.edges.size()) < m) {
        int u = static_cast<int>(uniform_below(rng, n));
        int v = static_cast<int>(uniform_below(rng, n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
        if (seen.insert(key).second) g.edges.emplace_back(u, v);
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

bool is_simple(const Multigraph& g) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(2 * g.edges.size());
    for (auto [u, v] : g.edges) {
        if (u == v) return false;
        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
        if (!seen.insert(key).second) return false;
    }
    return true;
}

double simplicity_probability(const degseq::DegreeSequence& d) {
    double eta = degseq::degree_stats(d).eta;
    return std::exp(-eta / 2.0 - eta * eta / 4.0);
}

Multigraph uniform_simple_kcore(int k, int n, long long m, Rng& rng, int max_retries) {
    std::vector<int> bin_of, perm;
    std::unordered_set<std::uint64_t> seen;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        degseq::DegreeSequence d = degseq::sample_degree_sequence(k, n, m, rng);
        bins_and_shuffled_points(d, rng, bin_of, perm);
        // contract lazily: most attempts hit a loop or duplicate early
        seen.clear();
        seen.reserve(static_cast<std::size_t>(2 * m));
        Multigraph g;
        g.n = n;
        g.edges.reserve(m);
        bool simple = true;
        for (long long t = 0; t < m && simple; ++t) {
            int u = bin_of[perm[2 * t]], v = bin_of[perm[2 * t + 1]];
            if (u > v) std::swap(u, v);
            std::uint64_t key =
                (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
            simple = u != v && seen.insert(key).second;
            g.edges.emplace_back(u, v);
        }
        if (simple) {
            std::sort(g.edges.begin(), g.edges.end());
            return g;
        }
    }
    throw generation_error("uniform_simple_kcore: simplicity retry cap exceeded");
}

namespace {

double falling_factorial(double x, int j) {
    double out = 1;
    for (int i = 0; i < j; ++i) out *= (x - i);
    return out;
}

}  // namespace

double conditional_edge_probability(const degseq::DegreeSequence& d,
                                    const Multigraph& explored,
                                    const std::vector<std::pair<int, int>>& extension) {
    const int n = d.n();
    if (extension.empty()) return 1.0;
    if (static_cast<int>(extension.size()) > d.k)
        throw std::invalid_argument(
            "conditional_edge_probability: |E(J)| <= k precondition failed");

    std::vector<int> h(n, 0), j(n, 0);
    for (auto [u, v] : explored.edges) {
        h[u]++;
        h[v]++;
    }
    for (auto [u, v] : extension) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw std::invalid_argument("conditional_edge_probability: bad extension edge");
        j[u]++;
        j[v]++;
    }

    std::vector<int> residual(n);
    for (int v = 0; v < n; ++v) {
        residual[v] = d.degrees[v] - h[v];
        if (residual[v] < 0)
            throw std::invalid_argument(
                "conditional_edge_probability: explored degrees exceed d precondition failed");
    }
    if (!degseq::simple_graph_exists_avoiding(residual, extension))
        throw std::invalid_argument(
            "conditional_edge_probability: no simple graph avoiding J precondition failed");

    double num = 1.0;
    for (int v = 0; v < n; ++v)
        if (j[v] > 0) num *= falling_factorial(residual[v], j[v]);
    int ej = static_cast<int>(extension.size());
    double denom = std::pow(2.0, ej) * falling_factorial(static_cast<double>(d.m), ej);
    return num / denom;
}

double first_edge_probability_multigraph(int d_u, int d_v, long long m) {
    return static_cast<double>(d_u) * d_v /
           (static_cast<double>(m) * (2.0 * static_cast<double>(m) - 1.0));
}

double neighbor_set_probability(const std::vector<int>& neighbor_degrees,
                                long long current_m) {
    int l = static_cast<int>(neighbor_degrees.size());
    double num = 1.0;
    for (int i = 0; i < l; ++i) num *= (i + 1);  // l!
    for (int deg : neighbor_degrees) num *= deg;
    double denom = std::pow(2.0, l) * falling_factorial(static_cast<double>(current_m), l);
    return num / denom;
}

}  // namespace corelab::graphgen
