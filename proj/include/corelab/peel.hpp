#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "corelab/degseq.hpp"
#include "corelab/graphgen.hpp"
#include "corelab/ode.hpp"
#include "corelab/rng.hpp"

namespace corelab::peel {

struct KcoreResult {
    graphgen::Multigraph graph;   // induced sub-multigraph, vertices relabeled 0..count-1
    std::vector<char> in_core;    // indexed by original vertex id
    long long vertex_count = 0;
};

// The unique maximal subgraph with minimum degree >= k (possibly empty).
// Queue-based peeling, O(n + m).
KcoreResult kcore(const graphgen::Multigraph& g, int k);

// Delete one uniformly random edge from the k-core g and return how many
// vertices the peeling cascade removes. Requires min degree >= k and m >= 1.
long long w_statistic(const graphgen::Multigraph& g, int k, Rng& rng);
long long w_statistic_from_edge(const graphgen::Multigraph& g, int k, std::size_t edge_index);

enum class PeelEnd {
    exhausted_core_empty,  // every point was deleted; the k-core of G-e is empty
    cascade_stopped,       // the marked set emptied with points remaining
};

// Full record of the point-level deletion procedure: one random edge is
// removed from the pairing of d, then marked points are consumed one per loop
// iteration with the matching revealed lazily.
struct PeelTrace {
    int z0 = 0;                                   // marks made by the initial deletion
    std::vector<int> z;                           // Z_j for loop iterations j >= 1
    std::vector<long long> y;                     // Y_j = marked undeleted after iteration j
    std::vector<std::pair<double, double>> p_hat; // realized (p_j, p_j') before each reveal
    long long w = 0;                              // sum_j ceil(Z_j/(k-1)), including j = 0
    PeelEnd terminated = PeelEnd::cascade_stopped;

    long long y0() const { return z0; }
    std::size_t steps() const { return z.size(); }
};

PeelTrace deletion_procedure_points(const degseq::DegreeSequence& d, Rng& rng);

// Vertex-level deletion procedure on a simple k-core: remove a random edge,
// then delete one uniformly chosen marked vertex per iteration.
struct VertexPeelResult {
    long long removed_count = 0;
    long long step_count = 0;
};

VertexPeelResult deletion_procedure_vertex(const graphgen::Multigraph& g, int k, Rng& rng);
VertexPeelResult deletion_procedure_vertex_from_edge(const graphgen::Multigraph& g, int k,
                                                     std::size_t edge_index, Rng& rng);

enum class TrajectoryStop {
    light_empty,  // the deletion actually ended
    domain_exit,  // (i/n, S_i/n, T_i/n) left the supplied domain
};

// Scaled history of the heavy/light pairing-allocation peel. Entry i holds
// the state just after loop iteration i (entry 0 = after the initial edge).
struct Trajectory {
    std::vector<long long> s;      // S_i: points in heavy vertices
    std::vector<long long> t;      // T_i: heavy vertex count
    std::vector<long long> w_pts;  // W_i: points in light vertices
    TrajectoryStop stop_reason = TrajectoryStop::light_empty;
};

// The heavy/light deletion procedure on a fresh allocation-model k-core with
// n vertices and m edges. If a domain is supplied, it stops at the first loop
// iteration whose scaled state leaves the domain.
Trajectory pairing_allocation_peel(int k, int n, long long m, Rng& rng,
                                   const std::optional<ode::DomainSpec>& domain = std::nullopt);

}  // namespace corelab::peel
