#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "corelab/analytic.hpp"
#include "corelab/errors.hpp"
#include "corelab/ode.hpp"

using namespace corelab;
using namespace corelab::ode;

namespace {

// test-local RK4 over a fixed x range (independent of ode::integrate)
template <class F>
std::pair<double, double> rk4_to(F&& f, double y0, double z0, double x_end, double h) {
    double x = 0, y = y0, z = z0;
    while (x < x_end - 1e-12) {
        double step = std::min(h, x_end - x);
        auto [k1y, k1z] = f(x, y, z);
        auto [k2y, k2z] = f(x + step / 2, y + step / 2 * k1y, z + step / 2 * k1z);
        auto [k3y, k3z] = f(x + step / 2, y + step / 2 * k2y, z + step / 2 * k2z);
        auto [k4y, k4z] = f(x + step, y + step * k3y, z + step * k3z);
        y += step / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
        z += step / 6 * (k1z + 2 * k2z + 2 * k3z + k4z);
        x += step;
    }
    return {y, z};
}

}  // namespace

TEST_CASE("c->k closed form") {
    for (int k : {3, 4, 5}) CHECK(trajectory_c_to_k(k, 0.0) == doctest::Approx(k));
    CHECK(trajectory_c_to_k(3, 1.0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(trajectory_c_to_k(3, 1.5), std::domain_error);

    // gap identity: (k-2x) - y* = (k-2x)(1 - ((k-2x)/k)^{k/2-1})
    for (double x : {0.1, 0.5, 1.0}) {
        double y = trajectory_c_to_k(3, x);
        double lhs = (3 - 2 * x) - y;
        double rhs = (3 - 2 * x) * (1 - std::pow((3 - 2 * x) / 3.0, 0.5));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("c->k closed form solves its ODE (RK4 cross-check)") {
    auto field = [](double x, double y, double) {
        return std::pair<double, double>{-3.0 * y / (3.0 - 2.0 * x), 0.0};
    };
    for (double x_end : {0.3, 0.8, 1.2}) {
        auto [y, z] = rk4_to(field, 3.0, 0.0, x_end, 1e-3);
        CHECK(std::abs(y - trajectory_c_to_k(3, x_end)) < 1e-6);
    }
}

TEST_CASE("general closed form: initial conditions and conserved quantities") {
    const int k = 3;
    const double C = 3.4;
    const double lam = analytic::solve_lambda(k, C).lambda_kc;
    OdeState at0 = trajectory_general(k, C, 0.0);
    CHECK(at0.y == doctest::Approx(C).epsilon(1e-12));
    CHECK(at0.z == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(at0.mu == doctest::Approx(lam).epsilon(1e-12));

    const double inv1 = lam * lam / C;                                  // mu^2/(C-2x)
    const double inv2 = std::exp(lam) / analytic::f_k(k, lam);          // z e^mu / f_k(mu)
    for (double x = 0; x < 1.3; x += 0.05) {
        OdeState st = trajectory_general(k, C, x);
        CHECK(st.mu * st.mu / (C - 2 * x) == doctest::Approx(inv1).epsilon(1e-8));
        CHECK(st.z * std::exp(st.mu) / analytic::f_k(k, st.mu) ==
              doctest::Approx(inv2).epsilon(1e-8));
        // mu is the rate matching the heavy-degree ratio y/z
        CHECK(analytic::solve_lambda(k, st.y / st.z).lambda_kc ==
              doctest::Approx(st.mu).epsilon(1e-7));
    }

    // frozen spot value at x = 0.5
    OdeState st = trajectory_general(3, 3.4, 0.5);
    CHECK(st.mu == doctest::Approx(1.1033338135571084).epsilon(1e-9));
    CHECK(st.y == doctest::Approx(2.2845444096137421).epsilon(1e-9));
    CHECK(st.z == doctest::Approx(0.6869438882875539).epsilon(1e-9));

    CHECK_THROWS_AS(trajectory_general(3, 3.4, 1.7001), std::domain_error);
}

TEST_CASE("general closed form matches RK4 of (f_y, f_z)") {
    const int k = 3;
    const double C = 3.4;
    auto field = [&](double x, double y, double z) {
        return general_vector_field(k, C, x, y, z);
    };
    double sup = 0;
    for (double x_end : {0.2, 0.6, 1.0, 1.36}) {
        auto [y, z] = rk4_to(field, C, 1.0, x_end, 1e-3);
        OdeState st = trajectory_general(k, C, x_end);
        sup = std::max({sup, std::abs(y - st.y), std::abs(z - st.z)});
    }
    CHECK(sup < 1e-6);
}

TEST_CASE("general form tends to the c->k form as C -> k") {
    for (double x = 0; x <= 1.2; x += 0.1) {
        double general = trajectory_general(3, 3.0 + 1e-4, x).y;
        double limit = trajectory_c_to_k(3, x);
        CHECK(std::abs(general - limit) <= 1e-3);
    }
}

TEST_CASE("integrate: exit faces, immediate exit, Richardson") {
    const int k = 3;
    DomainSpec dom{0.1, 0.0, DomainVariant::c_to_k};
    auto field = [](double x, double y, double) {
        return std::pair<double, double>{-3.0 * y / (3.0 - 2.0 * x), 0.0};
    };

    IntegrationResult r = integrate(field, {0.0, 3.0, 0.0, 0.0}, dom, k, 1e-3);
    CHECK(r.exit_face == "y <= gamma");  // the y face, not the 2x face
    CHECK(r.path.size() > 100);

    // initial state outside the domain: empty path
    IntegrationResult out = integrate(field, {0.0, 5.0, 0.0, 0.0}, dom, k, 1e-3);
    CHECK(out.path.empty());
    CHECK(out.exit_face == "y >= k + gamma");

    // order-4 convergence: halving the step barely moves the terminal value
    IntegrationResult half = integrate(field, {0.0, 3.0, 0.0, 0.0}, dom, k, 5e-4);
    double y_h = r.path.back().y, y_h2 = half.path.back().y;
    CHECK(std::abs(y_h - y_h2) < 1e-7);

    CHECK_THROWS_AS(integrate(field, {0.0, 3.0, 0.0, 0.0}, dom, k, 0.0),
                    std::invalid_argument);
}

TEST_CASE("cascade core-size prediction") {
    double z_end = core_size_prediction_on_cascade(3, 3.2, 0.05);
    CHECK(z_end > 0);
    CHECK(z_end < 3 * 0.05);

    // the terminal bound shrinks with gamma
    double prev = 1e9;
    for (double gamma : {0.2, 0.1, 0.05, 0.02}) {
        double z = core_size_prediction_on_cascade(3, 3.2, gamma);
        CHECK(z <= prev + 1e-12);
        prev = z;
    }
    CHECK_THROWS_AS(core_size_prediction_on_cascade(3, 3.6, 0.05), std::domain_error);
}

TEST_CASE("gap positivity inside the cascade window") {
    // (C-2x) - y*(x) stays bounded away from 0 on [eps'/2, (C-gamma)/2]
    const double C = 3.3, gamma = 0.05, eps_prime = 0.02;
    double min_gap = 1e9;
    for (double x = eps_prime / 2; x <= (C - gamma) / 2; x += 1e-3) {
        OdeState st = trajectory_general(3, C, x);
        min_gap = std::min(min_gap, (C - 2 * x) - st.y);
    }
    CHECK(min_gap > 0);
    CHECK(min_gap / gamma > 1e-3);  // a concrete positive eps''
}
