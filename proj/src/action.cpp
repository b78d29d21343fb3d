#include "qo/action.hpp"

#include <cmath>
#include <numbers>

#include "qo/detail/power_law.hpp"

namespace qo::action {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Pole cutoff for the turning-anchored forms: |cos(theta - anchor)| below
// this throws instead of returning a huge catastrophically cancelled value.
constexpr double kPoleFloor = 1e-8;

struct Frame {
    detail::PowerLawModel model;
    double E;
    double theta0;
    double phi_a;
    double phi_b;
    double dt;
    double coeff;  // (1/3) sqrt(m k4 / 2)
    double vroot;  // sqrt(2E/m)
    double A;

    explicit Frame(const bvp::BvpSolution& sol)
        : model(2, sol.chart.params.m, sol.chart.params.k4),
          E(sol.chart.E),
          theta0(sol.chart.theta0),
          phi_a(sol.theta_a - sol.chart.theta0),
          phi_b(sol.theta_b - sol.chart.theta0),
          dt(model.time_between(E, phi_a, phi_b)),
          coeff(std::sqrt(sol.chart.params.m * sol.chart.params.k4 / 2.0) /
                3.0),
          vroot(std::sqrt(2.0 * E / sol.chart.params.m)),
          A(model.amplitude(E)) {}

    // Crossing-anchored boundary kernel A^3 sgn(sin phi)|sin phi|^{1/2}
    // cos phi, assembled from the cell-reduced position and velocity so it
    // vanishes exactly at constructed crossings.
    double crossing_kernel(double phi) const {
        return A * A * model.position(E, phi) * model.velocity(E, phi) / vroot;
    }
};

double turning_anchor_of(const Frame& f) {
    const double mid = 0.5 * (f.phi_a + f.phi_b);
    const double k = std::nearbyint((mid - kHalfPi) / kPi);
    return f.theta0 + kHalfPi + k * kPi;
}

}  // namespace

double momentum_integral(const bvp::BvpSolution& sol) {
    const Frame f(sol);
    const double b_b = f.coeff * f.crossing_kernel(f.phi_b);
    const double b_a = f.coeff * f.crossing_kernel(f.phi_a);
    return (4.0 * f.E / 3.0) * f.dt + (b_b - b_a);
}

double turning_anchor(const bvp::BvpSolution& sol) {
    const Frame f(sol);
    return turning_anchor_of(f);
}

ActionBreakdown evaluate(const bvp::BvpSolution& sol, ActionForm form) {
    const Frame f(sol);
    const double b_b0 = f.coeff * f.crossing_kernel(f.phi_b);
    const double b_a0 = f.coeff * f.crossing_kernel(f.phi_a);
    const double mi = (4.0 * f.E / 3.0) * f.dt + (b_b0 - b_a0);
    const double et = f.E * f.dt;

    if (form == ActionForm::Primary) {
        const double total = (b_b0 - b_a0) + f.E * f.dt / 3.0;
        return ActionBreakdown{mi, et, b_b0, b_a0, total};
    }

    const double anchor = turning_anchor_of(f);
    const double dm_a = (sol.theta_a - anchor);
    const double dm_b = (sol.theta_b - anchor);
    const double cm_a = std::cos(dm_a);
    const double cm_b = std::cos(dm_b);
    if (std::fabs(cm_a) < kPoleFloor || std::fabs(cm_b) < kPoleFloor)
        throw PoleError(
            "turning-anchored action form evaluated a quarter period from "
            "its anchor");

    const double y_a = f.model.position(f.E, f.phi_a);
    const double y_b = f.model.position(f.E, f.phi_b);

    double term_a = 0.0, term_b = 0.0;
    if (form == ActionForm::VariantMax) {
        term_b = -f.coeff * std::fabs(y_b) * y_b * y_b * std::tan(dm_b);
        term_a = -f.coeff * std::fabs(y_a) * y_a * y_a * std::tan(dm_a);
    } else {
        // Secant factor expanded through the anchored interpolation
        // identity: -|y|^3 / cos(dm) =
        //   -3 y ymax |ymax| + 2 |ymax|^3 (cos^2 dm)^{3/4} / cos(dm).
        const double y_max = f.model.position(f.E, anchor - f.theta0);
        const double abs_max = std::fabs(y_max);
        auto expanded = [&](double y, double cm) {
            return -3.0 * y * y_max * abs_max +
                   2.0 * abs_max * abs_max * abs_max *
                       std::pow(cm * cm, 0.75) / cm;
        };
        term_b = f.coeff * expanded(y_b, cm_b) * std::sin(dm_b);
        term_a = f.coeff * expanded(y_a, cm_a) * std::sin(dm_a);
    }
    const double total = (term_b - term_a) + f.E * f.dt / 3.0;
    return ActionBreakdown{mi, et, term_b, term_a, total};
}

EndpointDerivatives endpoint_derivatives(const bvp::BvpSolution& sol) {
    const Frame f(sol);
    const double m = sol.chart.params.m;
    return EndpointDerivatives{m * f.model.velocity(f.E, f.phi_a),
                               m * f.model.velocity(f.E, f.phi_b), f.E, f.E};
}

}  // namespace qo::action
