#include "qo/hierarchy.hpp"

#include <cmath>

#include "qo/detail/power_law.hpp"

namespace qo::hierarchy {

namespace {

detail::PowerLawModel model_of(const HierarchyParams& params) {
    return detail::PowerLawModel(params.n, params.m, params.k2n);
}

detail::PowerLawModel model_of(const HierarchyChart& chart) {
    return model_of(chart.params);
}

void validate_tol(double tol) {
    if (!std::isfinite(tol) || tol <= 0.0 || tol > 1e-4)
        throw DegenerateInputError("solver tol must lie in (0, 1e-4]");
}

HierarchySolution to_solution(const detail::PowerLawModel& model,
                              const HierarchyParams& params,
                              const BoundaryData& data,
                              const detail::PowerLawRoot& root) {
    const double t0 = data.a.t - model.time_between(root.E, 0.0, root.phi_a);
    return HierarchySolution{HierarchyChart(params, root.E, 0.0, t0),
                             root.phi_a, root.phi_b, root.residuals};
}

}  // namespace

double h_position(const HierarchyChart& chart, double theta) {
    check::finite(theta, "theta");
    return model_of(chart).position(chart.E, theta - chart.theta0);
}

double h_velocity(const HierarchyChart& chart, double theta) {
    check::finite(theta, "theta");
    return model_of(chart).velocity(chart.E, theta - chart.theta0);
}

double h_amplitude(const HierarchyChart& chart) {
    return model_of(chart).amplitude(chart.E);
}

double h_period(const HierarchyChart& chart) {
    return model_of(chart).period(chart.E);
}

double h_time_of_theta(const HierarchyChart& chart,
                       const extremal::ThetaInterval& span) {
    const detail::PowerLawModel model = model_of(chart);
    return model.time_between(chart.E, span.lo - chart.theta0,
                              span.hi - chart.theta0);
}

double h_theta_of_time(const HierarchyChart& chart, double t) {
    check::finite(t, "t");
    const detail::PowerLawModel model = model_of(chart);
    return chart.theta0 + model.phi_after(chart.E, 0.0, t - chart.t0);
}

HierarchySolution h_solve(const HierarchyParams& params,
                          const BoundaryData& data,
                          const BranchSelector& branch, double tol) {
    validate_tol(tol);
    const detail::PowerLawModel model = model_of(params);
    detail::SolveControls controls;
    controls.tol = tol;
    return to_solution(model, params, data,
                       detail::solve_min_energy(model, data, branch, controls));
}

std::vector<HierarchySolution> h_solve_all(const HierarchyParams& params,
                                           const BoundaryData& data,
                                           const BranchSelector& branch,
                                           double tol) {
    validate_tol(tol);
    const detail::PowerLawModel model = model_of(params);
    detail::SolveControls controls;
    controls.tol = tol;
    std::vector<HierarchySolution> out;
    for (const detail::PowerLawRoot& root :
         detail::solve_all_roots(model, data, branch, controls))
        out.push_back(to_solution(model, params, data, root));
    return out;
}

HierarchySolution h_solve_seeded(const HierarchyParams& params,
                                 const BoundaryData& data,
                                 const BranchSelector& branch,
                                 const HierarchySolution& seed, double tol) {
    validate_tol(tol);
    const detail::PowerLawModel model = model_of(params);
    detail::SolveControls controls;
    controls.tol = tol;
    const detail::PowerLawRoot root = detail::solve_from_guess(
        model, data, branch, seed.chart.E, seed.theta_a - seed.chart.theta0,
        controls);
    return to_solution(model, params, data, root);
}

HierarchySolution h_from_chart(const HierarchyChart& chart, double theta_a,
                               double theta_b) {
    check::finite(theta_a, "theta_a");
    check::finite(theta_b, "theta_b");
    if (!(theta_b > theta_a))
        throw DegenerateInputError("segment requires theta_b > theta_a");
    return HierarchySolution{chart, theta_a, theta_b, {0.0, 0.0, 0.0}};
}

std::pair<double, double> h_endpoint_times(const HierarchySolution& sol) {
    const detail::PowerLawModel model = model_of(sol.chart.params);
    const double t_a =
        sol.chart.t0 +
        model.time_between(sol.chart.E, 0.0, sol.theta_a - sol.chart.theta0);
    const double t_b =
        sol.chart.t0 +
        model.time_between(sol.chart.E, 0.0, sol.theta_b - sol.chart.theta0);
    return {t_a, t_b};
}

ActionBreakdown h_action_of(const HierarchySolution& sol) {
    const detail::PowerLawModel model = model_of(sol.chart.params);
    const int n = sol.chart.params.n;
    const double E = sol.chart.E;
    const double phi_a = sol.theta_a - sol.chart.theta0;
    const double phi_b = sol.theta_b - sol.chart.theta0;
    const double dt = model.time_between(E, phi_a, phi_b);
    const double A = model.amplitude(E);
    const double vroot = std::sqrt(2.0 * E / sol.chart.params.m);
    const double K = std::sqrt(2.0 * E * sol.chart.params.m) * A / (n + 1.0);

    // sgn(sin phi)|sin phi|^{1/n} cos phi via the cell-reduced kernels.
    auto kernel = [&](double phi) {
        return model.position(E, phi) * model.velocity(E, phi) / (A * vroot);
    };
    const double b_b = K * kernel(phi_b);
    const double b_a = K * kernel(phi_a);
    const double mi = (2.0 * n / (n + 1.0)) * E * dt + (b_b - b_a);
    const double et = E * dt;
    const double total = ((n - 1.0) / (n + 1.0)) * E * dt + (b_b - b_a);
    return ActionBreakdown{mi, et, b_b, b_a, total};
}

ActionBreakdown h_action(const HierarchyParams& params,
                         const BoundaryData& data,
                         const BranchSelector& branch, double tol) {
    return h_action_of(h_solve(params, data, branch, tol));
}

action::EndpointDerivatives h_endpoint_derivatives(
    const HierarchySolution& sol) {
    const detail::PowerLawModel model = model_of(sol.chart.params);
    const double m = sol.chart.params.m;
    return action::EndpointDerivatives{
        m * model.velocity(sol.chart.E, sol.theta_a - sol.chart.theta0),
        m * model.velocity(sol.chart.E, sol.theta_b - sol.chart.theta0),
        sol.chart.E, sol.chart.E};
}

double ho_principal_function(double m, double omega, const BoundaryData& data) {
    check::finite_positive(m, "m");
    check::finite_positive(omega, "omega");
    const double dt = data.b.t - data.a.t;
    const double s = std::sin(omega * dt);
    if (std::fabs(s) < 1e-9)
        throw DegenerateSeparationError(
            "harmonic principal function is singular at whole half-period "
            "separations");
    const double ya = data.a.y, yb = data.b.y;
    return (m * omega / (2.0 * s)) *
           ((ya * ya + yb * yb) * std::cos(omega * dt) - 2.0 * ya * yb);
}

}  // namespace qo::hierarchy
