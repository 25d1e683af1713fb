#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "corelab/degseq.hpp"
#include "corelab/rng.hpp"

namespace corelab::graphgen {

// Multigraph as a multiset of unordered vertex pairs; loops are stored as
// (v, v) and contribute 2 to the degree of v.
struct Multigraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // canonical: first <= second

    long long m() const { return static_cast<long long>(edges.size()); }
    std::vector<int> degrees() const;
    int min_degree() const;
};

// The pairing-model state: 2m points partitioned into bins of sizes d_i plus
// a perfect matching on the points. The multigraph is its bin contraction.
struct Pairing {
    int n_points = 0;
    std::vector<int> bin_of;                    // point -> vertex
    std::vector<std::pair<int, int>> matching;  // m unordered point pairs
};

// Uniform perfect matching on the points of d's bins, plus its contraction.
std::pair<Pairing, Multigraph> pairing_multigraph(const degseq::DegreeSequence& d, Rng& rng);

// Uniform random multigraph k-core with n vertices, m edges: a conditioned
// truncated-Poisson degree sequence fed through the pairing model.
Multigraph allocation_kcore(int k, int n, long long m, Rng& rng);

// Uniform simple graph with n vertices and m edges (no loops, no multi-edges).
Multigraph gnm(int n, long long m, Rng& rng);

bool is_simple(const Multigraph& g);

// exp(-eta/2 - eta^2/4): leading-order probability that the pairing model on
// d yields a simple graph.
double simplicity_probability(const degseq::DegreeSequence& d);

// Rejection sample: allocation_kcore until simple. The result is uniform over
// simple k-cores with n vertices and m edges. Throws corelab::generation_error
// when max_retries consecutive rejections occur.
Multigraph uniform_simple_kcore(int k, int n, long long m, Rng& rng,
                                int max_retries = 100000);

// Leading-order conditional probability that the uniform simple graph with
// degree sequence d contains the extension edges J given it contains the
// explored subgraph H:
//     prod_v [d_v - h_v]_{j_v} / (2^{|J|} [m]_{|J|})
// with [x]_j the falling factorial. Requires |J| <= d.k and that a simple
// graph with the residual degrees avoiding J exists (throws
// std::invalid_argument naming the failed check otherwise).
double conditional_edge_probability(const degseq::DegreeSequence& d,
                                    const Multigraph& explored,
                                    const std::vector<std::pair<int, int>>& extension);

// P(uv is the first revealed edge) in the pairing model: d_u d_v / (m(2m-1)).
double first_edge_probability_multigraph(int d_u, int d_v, long long m);

// P(the revealed neighbour set of a degree-l vertex is {u_1..u_l}) in the
// pairing model: l! prod_i deg(u_i) / (2^l [m]_l), with current degrees and
// current edge count.
double neighbor_set_probability(const std::vector<int>& neighbor_degrees,
                                long long current_m);

}  // namespace corelab::graphgen
