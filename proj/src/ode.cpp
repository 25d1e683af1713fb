#include "corelab/ode.hpp"

#include <cmath>
#include <stdexcept>

#include "corelab/analytic.hpp"
#include "corelab/errors.hpp"

namespace corelab::ode {

bool DomainSpec::contains(int k, double x, double y, double z) const {
    return violated_face(k, x, y, z).empty();
}

std::string DomainSpec::violated_face(int k, double x, double y, double z) const {
    const double g = gamma;
    if (variant == DomainVariant::c_to_k) {
        if (!(2 * x > -g)) return "2x <= -gamma";
        if (!(2 * x < k - g)) return "2x >= k - gamma";
        if (!(y > g)) return "y <= gamma";
        if (!(y < k + g)) return "y >= k + gamma";
        return "";
    }
    if (!(x > -g)) return "x <= -gamma";
    if (!(x < C - g)) return "x >= C - gamma";
    if (!(y > g)) return "y <= gamma";
    if (!(y < C + g)) return "y >= C + gamma";
    if (!(z > g)) return "z <= gamma";
    if (!(z < 1 + g)) return "z >= 1 + gamma";
    if (!(y > (k + g) * z)) return "y <= (k + gamma) z";
    return "";
}

double trajectory_c_to_k(int k, double x) {
    if (!(x < k / 2.0)) throw std::domain_error("trajectory_c_to_k: requires x < k/2");
    return std::pow(k - 2 * x, k / 2.0) / std::pow(static_cast<double>(k), k / 2.0 - 1.0);
}

OdeState trajectory_general(int k, double C, double x) {
    const double lam = analytic::solve_lambda(k, C).lambda_kc;
    const double rem = C - 2 * x;
    if (!(rem > 0)) throw std::domain_error("trajectory_general: requires C - 2x > 0");
    OdeState st;
    st.x = x;
    st.mu = lam * std::sqrt(rem / C);
    st.z = std::exp(lam - st.mu) * analytic::f_k(k, st.mu) / analytic::f_k(k, lam);
    st.y = rem * analytic::h_k(k, lam) / analytic::h_k(k, st.mu);
    return st;
}

std::pair<double, double> general_vector_field(int k, double C, double x, double y,
                                               double z) {
    const double rem = C - 2 * x;
    if (!(rem > 0)) throw numeric_error("general_vector_field: C - 2x <= 0");
    // mu = lambda_{k, y/z}; below ratio k + 1e-9 the trajectory has left the
    // y > (k+gamma) z face and the field is not evaluated
    const double ratio = y / z;
    if (!(ratio > k + 1e-9))
        throw numeric_error("general_vector_field: y/z too close to k");
    const double mu = analytic::solve_lambda(k, ratio).lambda_kc;
    const double muz_over_y = mu * z / y;
    double fy = -(y / rem) * (k - (k - 1) * muz_over_y);
    double fz = -(y / rem) * (1.0 - muz_over_y);
    return {fy, fz};
}

IntegrationResult integrate(const VectorField& f, OdeState initial,
                            const DomainSpec& domain, int k, double step) {
    if (!(step > 0)) throw std::invalid_argument("integrate: step must be > 0");
    IntegrationResult out;
    double x = initial.x, y = initial.y, z = initial.z;
    std::string face = domain.violated_face(k, x, y, z);
    if (!face.empty()) {
        // initial state already outside: empty path, immediate exit
        out.exit_face = face;
        return out;
    }
    out.path.push_back(initial);
    const long long max_steps = static_cast<long long>(1e8);
    for (long long i = 0; i < max_steps; ++i) {
        auto [k1y, k1z] = f(x, y, z);
        auto [k2y, k2z] = f(x + step / 2, y + step / 2 * k1y, z + step / 2 * k1z);
        auto [k3y, k3z] = f(x + step / 2, y + step / 2 * k2y, z + step / 2 * k2z);
        auto [k4y, k4z] = f(x + step, y + step * k3y, z + step * k3z);
        double ny = y + step / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
        double nz = z + step / 6 * (k1z + 2 * k2z + 2 * k3z + k4z);
        if (!std::isfinite(ny) || !std::isfinite(nz))
            throw numeric_error("integrate: vector field produced non-finite state");
        x += step;
        y = ny;
        z = nz;
        out.path.push_back({x, y, z, 0.0});
        face = domain.violated_face(k, x, y, z);
        if (!face.empty()) {
            out.exit_face = face;
            return out;
        }
    }
    return out;
}

double core_size_prediction_on_cascade(int k, double C, double gamma) {
    const auto th = analytic::thresholds(k);
    if (!(C < th.c_k_prime))
        throw std::domain_error(
            "core_size_prediction_on_cascade: requires C < c_k' (the y-gap closes otherwise)");
    // walk the closed form until it leaves D_gamma
    DomainSpec dom{gamma, C, DomainVariant::general};
    const double step = 1e-4;
    OdeState prev = trajectory_general(k, C, 0.0);
    for (double x = step;; x += step) {
        if (2 * x >= C) return prev.z;
        OdeState st;
        // solve_lambda rejects ratios within 1e-9 of k: treat that as an exit
        try {
            st = trajectory_general(k, C, x);
        } catch (const std::exception&) {
            return prev.z;
        }
        if (!dom.contains(k, st.x, st.y, st.z)) return st.z;
        prev = st;
    }
}

}  // namespace corelab::ode
