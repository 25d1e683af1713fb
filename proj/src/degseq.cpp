#include "corelab/degseq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "corelab/analytic.hpp"
#include "corelab/errors.hpp"

namespace corelab::degseq {

TruncatedPoissonSampler::TruncatedPoissonSampler(int k, double lambda)
    : k_(k), lambda_(lambda) {
    if (k < 0 || !(lambda > 0))
        throw std::invalid_argument("TruncatedPoissonSampler: need k >= 0, lambda > 0");
    double t = analytic::tp_pmf({k, lambda}, k);
    double cum = t;
    cum_.push_back(cum);
    for (int j = k + 1; 1.0 - cum > 1e-17 && j < k + 4096; ++j) {
        t *= lambda / j;
        cum += t;
        cum_.push_back(cum);
    }
}

int TruncatedPoissonSampler::tail_draw(double u) const {
    int j = k_ + static_cast<int>(cum_.size()) - 1;
    double cum = cum_.back();
    double t = analytic::tp_pmf({k_, lambda_}, j);
    while (u > cum) {
        ++j;
        t *= lambda_ / j;
        cum += t;
        if (t < 1e-300) break;
    }
    return j;
}

DegreeSequence sample_degree_sequence(int k, int n, long long m, Rng& rng,
                                      long long max_retries) {
    if (n < 1) throw std::invalid_argument("sample_degree_sequence: n must be >= 1");
    if (k < 0) throw std::invalid_argument("sample_degree_sequence: k must be >= 0");
    if (2 * m < static_cast<long long>(k) * n)
        throw std::invalid_argument("sample_degree_sequence: empty support, 2m < kn");
    const long long target = 2 * m;
    if (target == static_cast<long long>(k) * n) {
        // degenerate c = k: the all-k vector is the only element of D_k(n,m)
        return {std::vector<int>(n, k), k, m};
    }
    double c = static_cast<double>(target) / n;
    TruncatedPoissonSampler tp(k, analytic::solve_lambda(k, c).lambda_kc);
    if (max_retries < 0)
        max_retries = static_cast<long long>(1e4 * std::sqrt(static_cast<double>(n))) + 10;

    std::vector<int> deg(n);
    for (long long attempt = 0; attempt < max_retries; ++attempt) {
        long long sum = 0;
        bool overshoot = false;
        for (int i = 0; i < n; ++i) {
            deg[i] = tp(rng);
            sum += deg[i];
            // remaining draws are >= k each: abort attempts that cannot land
            if (sum > target - static_cast<long long>(k) * (n - 1 - i)) {
                overshoot = true;
                break;
            }
        }
        if (!overshoot && sum == target) return {std::move(deg), k, m};
    }
    throw generation_error("sample_degree_sequence: acceptance too rare, cap " +
                           std::to_string(max_retries) + " reached");
}

DegreeStats degree_stats(const DegreeSequence& d) {
    DegreeStats out;
    long long pairs2 = 0;  // sum_i d_i (d_i - 1)
    for (int deg : d.degrees) {
        ++out.counts[deg];
        pairs2 += static_cast<long long>(deg) * (deg - 1);
    }
    out.eta = static_cast<double>(pairs2) / (2.0 * static_cast<double>(d.m));
    return out;
}

TypicalityFlags typicality(const DegreeSequence& d, double phi, double beta,
                           double alpha, double R) {
    if (!(beta > 0 && beta < 0.25))
        throw std::invalid_argument("typicality: beta must be in (0, 0.25)");
    if (!(alpha < 1.0 / 3.0))
        throw std::invalid_argument("typicality: alpha must be < 1/3");
    const int n = d.n();
    const double c = d.c();

    DegreeStats st = degree_stats(d);
    long long dk = 0;
    if (auto it = st.counts.find(d.k); it != st.counts.end()) dk = it->second;

    double expected_dk, expected_eta;
    if (c <= d.k + 1e-9) {
        // degenerate c = k: TP(k, lambda_{k,c}) tends to the point mass at k
        expected_dk = n;
        expected_eta = d.k - 1.0;
    } else {
        const double lam = analytic::solve_lambda(d.k, c).lambda_kc;
        expected_dk = n * analytic::tp_pmf({d.k, lam}, d.k);
        // E eta(Y) over the unconditioned product law: n E[C(Y_1,2)] / m,
        // with E[Y(Y-1)] = lambda^2 f_{k-2}(lambda) / f_k(lambda)
        double e_pairs = lam * lam * analytic::f_k(d.k - 2, lam) / analytic::f_k(d.k, lam);
        expected_eta = n * e_pairs / (2.0 * static_cast<double>(d.m));
    }

    TypicalityFlags flags;
    flags.in_tilde = std::abs(dk - expected_dk) <= n * phi;

    int max_deg = *std::max_element(d.degrees.begin(), d.degrees.end());
    flags.in_hat = flags.in_tilde && max_deg <= std::pow(static_cast<double>(n), beta) &&
                   std::abs(st.eta - expected_eta) <= phi;

    double exp_moment = 0;
    for (int deg : d.degrees) exp_moment += std::exp(alpha * deg);
    flags.in_check = exp_moment <= R * n;
    return flags;
}

bool erdos_gallai_graphical(std::vector<int> d) {
    if (d.empty()) return true;
    for (int x : d)
        if (x < 0) return false;
    std::sort(d.begin(), d.end(), std::greater<int>());
    const int n = static_cast<int>(d.size());
    if (d[0] > n - 1) return false;

    std::vector<long long> prefix(n + 1, 0);
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + d[i];
    if (prefix[n] % 2 != 0) return false;

    for (int l = 1; l <= n; ++l) {
        // sum_{j>l} min(l, d_j): entries >= l contribute l, the rest their value.
        // d is descending, so find the first index >= l with d[idx] < l.
        auto it = std::partition_point(d.begin() + l, d.end(), [l](int x) { return x >= l; });
        long long idx = it - d.begin();
        long long rhs = static_cast<long long>(l) * (l - 1) +
                        static_cast<long long>(l) * (idx - l) + (prefix[n] - prefix[idx]);
        if (prefix[l] > rhs) return false;
    }
    return true;
}

bool simple_graph_exists_avoiding(const std::vector<int>& d,
                                  const std::vector<std::pair<int, int>>& forbidden) {
    if (forbidden.empty()) return erdos_gallai_graphical(d);
    const int n = static_cast<int>(d.size());
    for (auto [a, b] : forbidden)
        if (a < 0 || b < 0 || a >= n || b >= n || a == b)
            throw std::invalid_argument("simple_graph_exists_avoiding: bad forbidden pair");

    // the forbidden pairs must form a star; find its center
    int center = -1;
    {
        auto [a0, b0] = forbidden[0];
        bool a_ok = true, b_ok = true;
        for (auto [a, b] : forbidden) {
            a_ok = a_ok && (a == a0 || b == a0);
            b_ok = b_ok && (a == b0 || b == b0);
        }
        if (a_ok)
            center = a0;
        else if (b_ok)
            center = b0;
        else
            throw std::invalid_argument(
                "simple_graph_exists_avoiding: forbidden pairs must share a vertex");
    }

    std::vector<char> avoided(n, 0);
    for (auto [a, b] : forbidden) avoided[a == center ? b : a] = 1;

    // lay the center off against the largest degrees outside the avoided set,
    // then test the residual sequence (Kleitman-Wang style reduction)
    int need = d[center];
    if (need < 0) return false;
    std::vector<int> candidates;
    candidates.reserve(n);
    for (int v = 0; v < n; ++v)
        if (v != center && !avoided[v]) candidates.push_back(v);
    if (static_cast<int>(candidates.size()) < need) return false;
    std::sort(candidates.begin(), candidates.end(),
              [&](int a, int b) { return d[a] > d[b]; });

    std::vector<int> residual;
    residual.reserve(n - 1);
    std::vector<char> decrement(n, 0);
    for (int i = 0; i < need; ++i) decrement[candidates[i]] = 1;
    for (int v = 0; v < n; ++v) {
        if (v == center) continue;
        int rd = d[v] - (decrement[v] ? 1 : 0);
        if (rd < 0) return false;
        residual.push_back(rd);
    }
    return erdos_gallai_graphical(residual);
}

}  // namespace corelab::degseq
