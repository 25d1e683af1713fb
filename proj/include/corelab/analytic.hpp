#pragma once

#include <utility>

namespace corelab::analytic {

// f_k(lambda) = e^lambda - sum_{i<k} lambda^i/i!  (the Poisson upper tail
// times e^lambda). Evaluated by the tail series for lambda < k so small
// values do not cancel.
double f_k(int k, double lambda);

// h_k(mu) = mu e^mu / f_{k-1}(mu). Throws std::domain_error for mu <= 0.
double h_k(int k, double mu);

struct TruncatedPoissonParams {
    int k = 0;          // support is {k, k+1, ...}
    double lambda = 1;  // rate, > 0
};

// pmf of TP(k, lambda) at j: lambda^j / (j! f_k(lambda)) for j >= k, else 0.
double tp_pmf(const TruncatedPoissonParams& p, int j);

struct TpMoments {
    double mean = 0;
    double variance = 0;
};

// mean = lambda f_{k-1}(lambda)/f_k(lambda); variance by series summation.
TpMoments tp_moments(const TruncatedPoissonParams& p);

struct WalkRate {
    int k = 0;
    double c = 0;
    double lambda_kc = 0;  // positive root of lambda f_{k-1}/f_k = c
    double q_kc = 0;       // lambda^{k-1} / ((k-1)! f_{k-1}(lambda))
};

// Requires c > k (throws std::invalid_argument when c <= k + 1e-9; the root
// degenerates to 0 there).
WalkRate solve_lambda(int k, double c);

struct Thresholds {
    int k = 0;
    double c_k = 0;        // inf_mu h_k(mu): giant-core emergence threshold
    double mu_star = 0;    // the unique minimizer of h_k
    double c_k_prime = 0;  // mu* (k-1)/(k-2): cascade-criticality threshold
};

// mu* is solved from the first-order condition mu^{k-1}/(k-2)! = f_{k-1}(mu);
// the two sides cross exactly once for mu > 0.
Thresholds thresholds(int k);

// Largest root of h_k(mu) = c for c > c_k; returns mu* when |c - c_k| <= 1e-12,
// throws corelab::numeric_error when c < c_k.
double mu_largest_root(int k, double c);

// Survival probability of the cascade walk started at y0 with offspring law
// P(k-1) = q, P(0) = 1-q: returns 1 - s*^y0 where s* is the smallest fixed
// point of (1-q) + q s^{k-1} in [0,1]. Zero when (k-1)q <= 1.
double survival_probability(int k, double q, long long y0);

struct CorePrediction {
    double vertex_fraction = 0;   // e^{-mu} f_k(mu)
    double edge_fraction = 0;     // (1/2) mu e^{-mu} f_{k-1}(mu)
    double core_avg_degree = 0;   // mu f_{k-1}(mu)/f_k(mu)
};

// Giant k-core size/edge fractions of G(n, m=cn/2) for c > c_k.
CorePrediction giant_core_prediction(int k, double c);

// eta_bar_c = lambda f_{k-2}(lambda)/f_{k-1}(lambda) at lambda = lambda_{k,c};
// the limit pair density of typical degree sequences.
double eta_bar(int k, double c);

}  // namespace corelab::analytic
