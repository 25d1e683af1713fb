#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "corelab/rng.hpp"

namespace corelab::degseq {

// A degree sequence in D_k(n,m): every entry >= k and sum = 2m.
struct DegreeSequence {
    std::vector<int> degrees;
    int k = 0;
    long long m = 0;

    int n() const { return static_cast<int>(degrees.size()); }
    double c() const { return 2.0 * static_cast<double>(m) / n(); }
};

struct DegreeStats {
    std::map<int, long long> counts;  // j -> D_j, number of vertices of degree j
    double eta = 0;                   // sum_i C(d_i,2) / m
};

// Draws one truncated Poisson TP(k, lambda) variate by inverting the cdf
// against a precomputed cumulative table (tail below 1e-17 handled by the
// running-term series). The scan is inline: conditioned rejection sampling
// draws this in the hundreds of millions.
class TruncatedPoissonSampler {
public:
    TruncatedPoissonSampler(int k, double lambda);

    int operator()(Rng& rng) const {
        const double u = uniform01(rng);
        const double* c = cum_.data();
        // branchless over the first four cells (nearly all of the mass);
        // the data-dependent branch of a sequential scan mispredicts half
        // the time and dominates the draw cost
        if (cum_.size() >= 4) {
            unsigned idx = static_cast<unsigned>(u > c[0]) + (u > c[1]) + (u > c[2]) +
                           (u > c[3]);
            if (idx < 4) return k_ + static_cast<int>(idx);
            for (std::size_t i = 4; i < cum_.size(); ++i)
                if (u <= c[i]) return k_ + static_cast<int>(i);
            return tail_draw(u);
        }
        for (std::size_t i = 0; i < cum_.size(); ++i)
            if (u <= c[i]) return k_ + static_cast<int>(i);
        return tail_draw(u);
    }

    int k() const { return k_; }
    double lambda() const { return lambda_; }

private:
    int tail_draw(double u) const;  // mass below 1e-17

    int k_;
    double lambda_;
    std::vector<double> cum_;  // cum_[i] = P(Y <= k+i)
};

// Exact sample of n i.i.d. TP(k, lambda_{k,2m/n}) conditioned on the sum being
// 2m, by whole-vector rejection. Throws corelab::generation_error if the
// retry cap (default 1e4 * sqrt(n)) is exceeded, std::invalid_argument if
// 2m < kn.
DegreeSequence sample_degree_sequence(int k, int n, long long m, Rng& rng,
                                      long long max_retries = -1);

DegreeStats degree_stats(const DegreeSequence& d);

struct TypicalityFlags {
    bool in_tilde = false;  // |D_k(d) - n pmf_k| <= n phi
    bool in_hat = false;    // in_tilde and max d_i <= n^beta and |eta - E eta| <= phi
    bool in_check = false;  // sum_i e^{alpha d_i} <= R n
};

// Membership tests for the typical degree-sequence sets; expectations are the
// analytic truncated-Poisson values at lambda_{k, 2m/n}.
TypicalityFlags typicality(const DegreeSequence& d, double phi, double beta,
                           double alpha, double R);

// Erdos-Gallai test: true iff the sequence is the degree sequence of some
// simple graph. Sorts internally; negative entries make it false.
bool erdos_gallai_graphical(std::vector<int> d);

// True iff some simple graph with degree sequence d avoids every pair in
// `forbidden`. The forbidden pairs must share a common endpoint (a star,
// which is what the conditional-probability checks need); vertices are 0-based
// indices into d. Empty forbidden set reduces to erdos_gallai_graphical.
bool simple_graph_exists_avoiding(const std::vector<int>& d,
                                  const std::vector<std::pair<int, int>>& forbidden);

}  // namespace corelab::degseq
