#include "corelab/peel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "corelab/errors.hpp"

namespace corelab::peel {

namespace {

std::vector<std::vector<int>> adjacency(const graphgen::Multigraph& g) {
    std::vector<std::vector<int>> adj(g.n);
    for (auto [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);  // loops insert v into its own list twice
    }
    return adj;
}

// W-term of one marking burst: ceil(z / (k-1)) clipped at 0 for z <= 0.
long long w_term(long long z, int k) {
    return z > 0 ? (z + k - 2) / (k - 1) : 0;
}

}  // namespace

KcoreResult kcore(const graphgen::Multigraph& g, int k) {
    auto adj = adjacency(g);
    std::vector<long long> deg(g.n, 0);
    for (int v = 0; v < g.n; ++v) deg[v] = static_cast<long long>(adj[v].size());

    std::vector<char> removed(g.n, 0);
    std::deque<int> queue;
    for (int v = 0; v < g.n; ++v)
        if (deg[v] < k) {
            queue.push_back(v);
            removed[v] = 1;
        }
    while (!queue.empty()) {
        int w = queue.front();
        queue.pop_front();
        for (int u : adj[w]) {
            if (removed[u]) continue;
            if (--deg[u] < k) {
                removed[u] = 1;
                queue.push_back(u);
            }
        }
    }

    KcoreResult out;
    out.in_core.resize(g.n);
    std::vector<int> relabel(g.n, -1);
    for (int v = 0; v < g.n; ++v) {
        out.in_core[v] = !removed[v];
        if (!removed[v]) relabel[v] = static_cast<int>(out.vertex_count++);
    }
    // the core is its own graph: compact vertex ids so degrees stay >= k
    out.graph.n = static_cast<int>(out.vertex_count);
    for (auto [u, v] : g.edges)
        if (!removed[u] && !removed[v])
            out.graph.edges.emplace_back(relabel[u], relabel[v]);
    return out;
}

long long w_statistic_from_edge(const graphgen::Multigraph& g, int k,
                                std::size_t edge_index) {
    if (g.edges.empty()) throw std::invalid_argument("w_statistic: graph has no edges");
    if (g.min_degree() < k)
        throw std::invalid_argument("w_statistic: input is not a k-core");
    graphgen::Multigraph cut = g;
    cut.edges.erase(cut.edges.begin() + static_cast<long long>(edge_index));
    return g.n - kcore(cut, k).vertex_count;
}

long long w_statistic(const graphgen::Multigraph& g, int k, Rng& rng) {
    if (g.edges.empty()) throw std::invalid_argument("w_statistic: graph has no edges");
    return w_statistic_from_edge(g, k, uniform_below(rng, g.edges.size()));
}

PeelTrace deletion_procedure_points(const degseq::DegreeSequence& d, Rng& rng) {
    const int k = d.k;
    const long long pts = 2 * d.m;
    if (pts < 2) throw std::invalid_argument("deletion_procedure_points: need 2m >= 2");

    // point -> bin, bins laid out consecutively
    std::vector<int> bin_of(pts);
    {
        long long p = 0;
        for (int v = 0; v < d.n(); ++v)
            for (int i = 0; i < d.degrees[v]; ++i) bin_of[p++] = v;
    }
    std::vector<long long> bin_size(d.n());
    for (int v = 0; v < d.n(); ++v) bin_size[v] = d.degrees[v];
    std::vector<std::vector<long long>> bin_points(d.n());
    for (long long p = 0; p < pts; ++p) bin_points[bin_of[p]].push_back(p);

    // alive points and alive marked points, both with O(1) removal
    std::vector<long long> alive(pts), pos_alive(pts);
    std::iota(alive.begin(), alive.end(), 0);
    std::iota(pos_alive.begin(), pos_alive.end(), 0);
    std::vector<long long> marked_list, pos_marked(pts, -1);
    std::vector<char> dead(pts, 0);

    long long bins_size_k = 0;
    for (int v = 0; v < d.n(); ++v)
        if (bin_size[v] == k) ++bins_size_k;

    auto remove_alive = [&](long long p) {
        long long i = pos_alive[p], last = alive.back();
        alive[i] = last;
        pos_alive[last] = i;
        alive.pop_back();
        dead[p] = 1;
        if (pos_marked[p] >= 0) {
            long long j = pos_marked[p], lastm = marked_list.back();
            marked_list[j] = lastm;
            pos_marked[lastm] = j;
            marked_list.pop_back();
            pos_marked[p] = -1;
        }
    };
    auto mark = [&](long long p) {
        if (pos_marked[p] >= 0 || dead[p]) return;
        pos_marked[p] = static_cast<long long>(marked_list.size());
        marked_list.push_back(p);
    };
    auto decrement_bin = [&](int v) {
        if (bin_size[v] == k) --bins_size_k;
        --bin_size[v];
        if (bin_size[v] == k) ++bins_size_k;
    };
    auto mark_bin = [&](int v) {
        for (long long p : bin_points[v]) mark(p);
    };

    PeelTrace trace;

    // Iteration 0: delete two distinct uniform points, then mark every point
    // sitting in a bin that fell below k.
    long long u = static_cast<long long>(uniform_below(rng, pts));
    long long v = static_cast<long long>(uniform_below(rng, pts - 1));
    if (v >= u) ++v;
    int bu = bin_of[u], bv = bin_of[v];
    remove_alive(u);
    remove_alive(v);
    decrement_bin(bu);
    decrement_bin(bv);
    if (bin_size[bu] < k) mark_bin(bu);
    if (bv != bu && bin_size[bv] < k) mark_bin(bv);
    trace.z0 = static_cast<int>(marked_list.size());
    trace.w = w_term(trace.z0, k);

    long long y = trace.z0;
    while (y > 0) {
        const long long undeleted = static_cast<long long>(alive.size());
        // realized probabilities before this reveal
        double denom = static_cast<double>(undeleted - 1);
        double pj = static_cast<double>(k) * bins_size_k / denom;
        double pj_prime = static_cast<double>(y - 1) / denom;
        trace.p_hat.emplace_back(pj, pj_prime);

        // choose a marked point, reveal its partner among the other survivors
        long long pu = marked_list[uniform_below(rng, marked_list.size())];
        long long pv;
        do {
            pv = alive[uniform_below(rng, alive.size())];
        } while (pv == pu);

        int z;
        bool v_marked = pos_marked[pv] >= 0;
        int bpv = bin_of[pv];
        long long size_before = bin_size[bpv];
        remove_alive(pu);
        remove_alive(pv);
        decrement_bin(bin_of[pu]);
        decrement_bin(bpv);
        if (v_marked) {
            z = -1;
        } else if (size_before == k) {
            mark_bin(bpv);
            z = k - 1;
        } else {
            z = 0;
        }
        y += z - 1;
        trace.z.push_back(z);
        trace.y.push_back(y);
        trace.w += w_term(z, k);
    }
    trace.terminated =
        alive.empty() ? PeelEnd::exhausted_core_empty : PeelEnd::cascade_stopped;
    return trace;
}

VertexPeelResult deletion_procedure_vertex_from_edge(const graphgen::Multigraph& g, int k,
                                                     std::size_t edge_index, Rng& rng) {
    if (g.edges.empty())
        throw std::invalid_argument("deletion_procedure_vertex: graph has no edges");
    if (g.min_degree() < k)
        throw std::invalid_argument("deletion_procedure_vertex: input is not a k-core");

    auto adj = adjacency(g);
    std::vector<long long> deg(g.n);
    for (int v = 0; v < g.n; ++v) deg[v] = static_cast<long long>(adj[v].size());

    std::vector<char> removed(g.n, 0), marked(g.n, 0);
    std::vector<int> marked_list;
    std::vector<long long> pos_marked(g.n, -1);
    auto mark = [&](int v) {
        if (marked[v] || removed[v]) return;
        marked[v] = 1;
        pos_marked[v] = static_cast<long long>(marked_list.size());
        marked_list.push_back(v);
    };
    auto unmark = [&](int v) {
        long long i = pos_marked[v];
        int last = marked_list.back();
        marked_list[i] = last;
        pos_marked[last] = i;
        marked_list.pop_back();
        pos_marked[v] = -1;
    };

    // Iteration 0: delete the chosen edge, mark endpoints that fall below k.
    auto [eu, ev] = g.edges[edge_index];
    adj[eu].erase(std::find(adj[eu].begin(), adj[eu].end(), ev));
    adj[ev].erase(std::find(adj[ev].begin(), adj[ev].end(), eu));
    deg[eu] -= eu == ev ? 2 : 1;
    if (eu != ev) deg[ev] -= 1;
    if (deg[eu] < k) mark(eu);
    if (deg[ev] < k) mark(ev);

    VertexPeelResult out;
    while (!marked_list.empty()) {
        int w = marked_list[uniform_below(rng, marked_list.size())];
        unmark(w);
        removed[w] = 1;
        for (int u : adj[w]) {
            if (removed[u]) continue;
            if (--deg[u] < k) mark(u);
        }
        ++out.removed_count;
        ++out.step_count;
    }
    return out;
}

VertexPeelResult deletion_procedure_vertex(const graphgen::Multigraph& g, int k, Rng& rng) {
    if (g.edges.empty())
        throw std::invalid_argument("deletion_procedure_vertex: graph has no edges");
    std::size_t e = uniform_below(rng, g.edges.size());
    return deletion_procedure_vertex_from_edge(g, k, e, rng);
}

Trajectory pairing_allocation_peel(int k, int n, long long m, Rng& rng,
                                   const std::optional<ode::DomainSpec>& domain) {
    degseq::DegreeSequence d = degseq::sample_degree_sequence(k, n, m, rng);
    const long long pts = 2 * m;

    std::vector<int> bin_of(pts);
    {
        long long p = 0;
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < d.degrees[v]; ++i) bin_of[p++] = v;
    }
    std::vector<long long> bin_size(d.degrees.begin(), d.degrees.end());
    std::vector<std::vector<long long>> bin_points(n);
    for (long long p = 0; p < pts; ++p) bin_points[bin_of[p]].push_back(p);

    // uniform perfect matching on the points
    std::vector<long long> partner(pts);
    {
        std::vector<long long> perm(pts);
        std::iota(perm.begin(), perm.end(), 0);
        shuffle_vec(perm, rng);
        for (long long t = 0; t < m; ++t) {
            partner[perm[2 * t]] = perm[2 * t + 1];
            partner[perm[2 * t + 1]] = perm[2 * t];
        }
    }

    enum : char { HEAVY, LIGHT, DEAD };
    std::vector<char> state(pts, HEAVY);
    std::vector<long long> light_list, pos_light(pts, -1);
    auto to_light = [&](long long p) {
        state[p] = LIGHT;
        pos_light[p] = static_cast<long long>(light_list.size());
        light_list.push_back(p);
    };
    auto kill = [&](long long p) {
        if (state[p] == LIGHT) {
            long long i = pos_light[p], last = light_list.back();
            light_list[i] = last;
            pos_light[last] = i;
            light_list.pop_back();
            pos_light[p] = -1;
        }
        state[p] = DEAD;
    };

    long long S = pts;  // points in heavy vertices
    long long T = n;    // heavy vertex count

    // demote a heavy vertex: its surviving points become 1-point light bins
    auto demote = [&](int v) {
        --T;
        for (long long p : bin_points[v]) {
            if (state[p] == HEAVY) {
                to_light(p);
                --S;
            }
        }
        bin_size[v] = 0;
    };

    // Iteration 0: delete a uniformly random matching edge.
    {
        long long a = static_cast<long long>(uniform_below(rng, pts));
        long long b = partner[a];
        int va = bin_of[a], vb = bin_of[b];
        long long size_a = bin_size[va];
        long long size_b = bin_size[vb];
        kill(a);
        kill(b);
        S -= 2;
        if (va != vb) {
            bin_size[va] -= 1;
            bin_size[vb] -= 1;
            if (size_a == k) demote(va);
            if (size_b == k) demote(vb);
        } else {
            bin_size[va] -= 2;
            if (size_a <= k + 1) demote(va);
        }
    }

    Trajectory trj;
    auto record = [&] {
        trj.s.push_back(S);
        trj.t.push_back(T);
        trj.w_pts.push_back(static_cast<long long>(light_list.size()));
    };
    record();  // S_0, T_0, W_0

    long long iter = 0;
    while (!light_list.empty()) {
        ++iter;
        long long j = light_list[uniform_below(rng, light_list.size())];
        long long pj = partner[j];
        char pstate = state[pj];
        int v = bin_of[pj];
        long long vsize = bin_size[v];
        kill(j);
        kill(pj);
        if (pstate == HEAVY) {
            --S;
            bin_size[v] -= 1;
            if (vsize == k) demote(v);
        }
        record();
        if (domain) {
            double x = static_cast<double>(iter) / n;
            double sy = static_cast<double>(S) / n;
            double sz = static_cast<double>(T) / n;
            if (!domain->contains(k, x, sy, sz)) {
                trj.stop_reason = TrajectoryStop::domain_exit;
                return trj;
            }
        }
    }
    trj.stop_reason = TrajectoryStop::light_empty;
    return trj;
}

}  // namespace corelab::peel
