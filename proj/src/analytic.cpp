#include "corelab/analytic.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "corelab/errors.hpp"

namespace corelab::analytic {

namespace {

constexpr int kBisectIters = 200;
constexpr double kBisectXTol = 1e-12;

// Bisection on [lo, hi] assuming g(lo) and g(hi) have opposite signs.
double bisect(const std::function<double(double)>& g, double lo, double hi) {
    double glo = g(lo);
    for (int i = 0; i < kBisectIters && (hi - lo) > kBisectXTol; ++i) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double f_k(int k, double lambda) {
    if (k < 0) throw std::invalid_argument("f_k: k must be >= 0");
    if (!std::isfinite(lambda) || lambda < 0)
        throw std::invalid_argument("f_k: lambda must be finite and >= 0");
    if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
    if (lambda < k) {
        // tail series sum_{i>=k} lambda^i/i!; direct subtraction cancels here
        double t = std::exp(k * std::log(lambda) - std::lgamma(k + 1.0));
        double sum = 0.0;
        for (int i = k; t > sum * 1e-18 || i == k; ++i) {
            sum += t;
            t *= lambda / (i + 1);
        }
        return sum;
    }
    double s = std::exp(lambda);
    double t = 1.0;
    for (int i = 0; i < k; ++i) {
        s -= t;
        t *= lambda / (i + 1);
    }
    return s < 0 ? 0.0 : s;
}

double h_k(int k, double mu) {
    if (k < 1) throw std::invalid_argument("h_k: k must be >= 1");
    if (!(mu > 0)) throw std::domain_error("h_k: mu must be > 0");
    // For large mu, f_{k-1}(mu) = e^mu (1 - o(1)) and e^mu would overflow;
    // the ratio tends to mu.
    if (mu > 300.0) return mu;
    return mu * std::exp(mu) / f_k(k - 1, mu);
}

double tp_pmf(const TruncatedPoissonParams& p, int j) {
    if (p.k < 0 || !(p.lambda > 0))
        throw std::invalid_argument("tp_pmf: need k >= 0 and lambda > 0");
    if (j < p.k) return 0.0;
    double log_num = j * std::log(p.lambda) - std::lgamma(j + 1.0);
    return std::exp(log_num) / f_k(p.k, p.lambda);
}

TpMoments tp_moments(const TruncatedPoissonParams& p) {
    if (p.k < 0 || !(p.lambda > 0))
        throw std::invalid_argument("tp_moments: need k >= 0 and lambda > 0");
    const double lam = p.lambda;
    const int k = p.k;
    double mean = k == 0 ? lam : lam * f_k(k - 1, lam) / f_k(k, lam);
    // second moment by direct summation
    double t = tp_pmf(p, k);
    double m2 = 0.0;
    for (int j = k;; ++j) {
        m2 += static_cast<double>(j) * j * t;
        t *= lam / (j + 1);
        if (t < 1e-16 && j > lam + k) break;
    }
    return {mean, m2 - mean * mean};
}

WalkRate solve_lambda(int k, double c) {
    if (k < 3) throw std::invalid_argument("solve_lambda: k must be >= 3");
    if (!(c > k + 1e-9))
        throw std::invalid_argument("solve_lambda: no positive root for c <= k (c=" +
                                    std::to_string(c) + ", k=" + std::to_string(k) + ")");
    auto g = [k](double lam) { return lam * f_k(k - 1, lam) / f_k(k, lam); };
    double lo = 1e-10;
    double hi = std::max(1.0, c);
    while (g(hi) <= c) hi *= 2.0;
    double lam = bisect([&](double x) { return g(x) - c; }, lo, hi);
    double q = std::exp((k - 1) * std::log(lam) - std::lgamma(static_cast<double>(k))) /
               f_k(k - 1, lam);
    return {k, c, lam, q};
}

Thresholds thresholds(int k) {
    if (k < 3) throw std::invalid_argument("thresholds: k must be >= 3");
    // first-order condition: mu^{k-1}/(k-2)! - f_{k-1}(mu) changes sign once,
    // positive near 0, negative for large mu
    auto r = [k](double mu) {
        return std::exp((k - 1) * std::log(mu) - std::lgamma(static_cast<double>(k - 1))) -
               f_k(k - 1, mu);
    };
    double lo = 1e-6;
    double hi = 1.0;
    while (r(hi) > 0) hi *= 2.0;
    double mu_star = bisect(r, lo, hi);
    double c_k = h_k(k, mu_star);
    double c_k_prime = mu_star * (k - 1) / static_cast<double>(k - 2);
    return {k, c_k, mu_star, c_k_prime};
}

double mu_largest_root(int k, double c) {
    Thresholds th = thresholds(k);
    if (c < th.c_k - 1e-12)
        throw numeric_error("mu_largest_root: h_k(mu) = c has no root for c < c_k");
    if (std::abs(c - th.c_k) <= 1e-12) return th.mu_star;
    // h_k is strictly increasing on [mu*, inf)
    double lo = th.mu_star;
    double hi = std::max(2.0 * th.mu_star, 1.0);
    while (h_k(k, hi) <= c) hi *= 2.0;
    return bisect([&](double mu) { return h_k(k, mu) - c; }, lo, hi);
}

double survival_probability(int k, double q, long long y0) {
    if (k < 3) throw std::invalid_argument("survival_probability: k must be >= 3");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("survival_probability: q must be in [0,1]");
    if (y0 < 0) throw std::invalid_argument("survival_probability: y0 must be >= 0");
    if (y0 == 0) return 0.0;
    if ((k - 1) * q <= 1.0) return 0.0;  // (sub)critical: extinction is certain
    if (q == 1.0) return 1.0;
    // smallest fixed point of phi(s) = (1-q) + q s^{k-1}; phi - id is positive
    // on [0, s*) and negative on (s*, 1)
    auto g = [k, q](double s) { return (1.0 - q) + q * std::pow(s, k - 1) - s; };
    double lo = 0.0;
    double hi = 1.0 - 1e-12;
    double s_star = bisect(g, lo, hi);
    return 1.0 - std::pow(s_star, static_cast<double>(y0));
}

CorePrediction giant_core_prediction(int k, double c) {
    Thresholds th = thresholds(k);
    if (c <= th.c_k - 1e-12)
        throw numeric_error("giant_core_prediction: requires c > c_k");
    double mu = mu_largest_root(k, c);
    double em = std::exp(-mu);
    CorePrediction out;
    out.vertex_fraction = em * f_k(k, mu);
    out.edge_fraction = 0.5 * mu * em * f_k(k - 1, mu);
    out.core_avg_degree = mu * f_k(k - 1, mu) / f_k(k, mu);
    return out;
}

double eta_bar(int k, double c) {
    WalkRate w = solve_lambda(k, c);
    return w.lambda_kc * f_k(k - 2, w.lambda_kc) / f_k(k - 1, w.lambda_kc);
}

}  // namespace corelab::analytic
