#pragma once

#include <functional>
#include <string>
#include <vector>

namespace corelab::ode {

// Scaled state of the heavy/light peel: x = i/n, y ~ S_i/n, z ~ T_i/n,
// mu = lambda_{k, y/z} (general case; unused for the c -> k variant).
struct OdeState {
    double x = 0;
    double y = 0;
    double z = 0;
    double mu = 0;
};

enum class DomainVariant { c_to_k, general };

// The open stopping domain D_gamma. c_to_k: -g < 2x < k-g, g < y < k+g.
// general: -g < x < C-g, g < y < C+g, g < z < 1+g, y > (k+g)z.
struct DomainSpec {
    double gamma = 0.05;
    double C = 0;  // initial average degree (general variant)
    DomainVariant variant = DomainVariant::general;

    bool contains(int k, double x, double y, double z) const;
    // name of the first violated constraint, or "" if inside
    std::string violated_face(int k, double x, double y, double z) const;
};

// Closed-form solution of y' = -ky/(k-2x), y(0) = k:
//     y*(x) = (k-2x)^{k/2} / k^{k/2-1}.
// Throws std::domain_error for x >= k/2.
double trajectory_c_to_k(int k, double x);

// Closed-form solution of the general system via the conserved quantities
// mu^2/(C-2x) and z e^mu / f_k(mu):
//     mu(x) = lambda_{k,C} sqrt((C-2x)/C),
//     z(x)  = e^{lambda - mu} f_k(mu)/f_k(lambda),
//     y(x)  = (C-2x) h_k(lambda_{k,C}) / h_k(mu).
// Requires C > k and C - 2x > 0.
OdeState trajectory_general(int k, double C, double x);

// d(y,z)/dx for the general system (f_y, f_z with mu = lambda_{k, y/z});
// exposed so the RK4 cross-check can integrate the same field the closed
// form solves.
std::pair<double, double> general_vector_field(int k, double C, double x, double y, double z);

using VectorField =
    std::function<std::pair<double, double>(double x, double y, double z)>;

struct IntegrationResult {
    std::vector<OdeState> path;  // includes the initial state
    std::string exit_face;       // "" if the field vanished / loop budget hit
};

// Fixed-step RK4 from `initial` until the state leaves `domain`; reports the
// violated constraint. Throws corelab::numeric_error on non-finite field
// values.
IntegrationResult integrate(const VectorField& f, OdeState initial,
                            const DomainSpec& domain, int k, double step);

// Terminal heavy-vertex fraction z at domain exit of the general trajectory:
// the predicted scale of the surviving core when the cascade runs long.
// Requires k < C < c_k'.
double core_size_prediction_on_cascade(int k, double C, double gamma);

}  // namespace corelab::ode
