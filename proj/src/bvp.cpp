#include "qo/bvp.hpp"

#include <cmath>
#include <numbers>

#include "qo/detail/power_law.hpp"

namespace qo::bvp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Endpoint-anchored reconstruction breaks down when the endpoints are a
// whole number of half-periods apart; this is the shared cutoff.
constexpr double kSeparationFloor = 1e-9;

detail::PowerLawModel model_of(const OscillatorParams& params) {
    return detail::PowerLawModel(2, params.m, params.k4);
}

void validate_tol(double tol) {
    if (!std::isfinite(tol) || tol <= 0.0 || tol > 1e-4)
        throw DegenerateInputError("solver tol must lie in (0, 1e-4]");
}

BvpSolution to_solution(const detail::PowerLawModel& model,
                        const OscillatorParams& params,
                        const BoundaryData& data,
                        const detail::PowerLawRoot& root) {
    const double t0 =
        data.a.t - model.time_between(root.E, 0.0, root.phi_a);
    return BvpSolution{ExtremalChart(params, root.E, 0.0, t0), root.phi_a,
                       root.phi_b, root.residuals};
}

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

BvpSolution solve(const OscillatorParams& params, const BoundaryData& data,
                  const BranchSelector& branch, double tol) {
    validate_tol(tol);
    const detail::PowerLawModel model = model_of(params);
    detail::SolveControls controls;
    controls.tol = tol;
    return to_solution(model, params, data,
                       detail::solve_min_energy(model, data, branch, controls));
}

std::vector<BvpSolution> solve_all(const OscillatorParams& params,
                                   const BoundaryData& data,
                                   const BranchSelector& branch, double tol) {
    validate_tol(tol);
    const detail::PowerLawModel model = model_of(params);
    detail::SolveControls controls;
    controls.tol = tol;
    std::vector<BvpSolution> out;
    for (const detail::PowerLawRoot& root :
         detail::solve_all_roots(model, data, branch, controls))
        out.push_back(to_solution(model, params, data, root));
    return out;
}

BvpSolution solve_seeded(const OscillatorParams& params,
                         const BoundaryData& data, const BranchSelector& branch,
                         const BvpSolution& seed, double tol) {
    validate_tol(tol);
    const detail::PowerLawModel model = model_of(params);
    detail::SolveControls controls;
    controls.tol = tol;
    const detail::PowerLawRoot root = detail::solve_from_guess(
        model, data, branch, seed.chart.E, seed.theta_a - seed.chart.theta0,
        controls);
    return to_solution(model, params, data, root);
}

BvpSolution from_chart(const ExtremalChart& chart, double theta_a,
                       double theta_b) {
    check::finite(theta_a, "theta_a");
    check::finite(theta_b, "theta_b");
    if (!(theta_b > theta_a))
        throw DegenerateInputError("segment requires theta_b > theta_a");
    return BvpSolution{chart, theta_a, theta_b, {0.0, 0.0, 0.0}};
}

std::pair<double, double> endpoint_times(const BvpSolution& sol) {
    const detail::PowerLawModel model = model_of(sol.chart.params);
    const double t_a =
        sol.chart.t0 +
        model.time_between(sol.chart.E, 0.0, sol.theta_a - sol.chart.theta0);
    const double t_b =
        sol.chart.t0 +
        model.time_between(sol.chart.E, 0.0, sol.theta_b - sol.chart.theta0);
    return {t_a, t_b};
}

BoundaryData endpoints(const BvpSolution& sol) {
    const auto [t_a, t_b] = endpoint_times(sol);
    const detail::PowerLawModel model = model_of(sol.chart.params);
    return BoundaryData(
        SpacetimePoint(t_a, model.position(sol.chart.E,
                                           sol.theta_a - sol.chart.theta0)),
        SpacetimePoint(t_b, model.position(sol.chart.E,
                                           sol.theta_b - sol.chart.theta0)));
}

double interpolate(const BvpSolution& sol, double t) {
    check::finite(t, "t");
    const double delta = sol.theta_b - sol.theta_a;
    if (std::fabs(std::sin(delta)) < kSeparationFloor)
        throw DegenerateSeparationError(
            "endpoints a whole number of half-periods apart: interior "
            "reconstruction from endpoint data is indeterminate");
    const auto [t_a, t_b] = endpoint_times(sol);
    const double slack = 1e-12 * (t_b - t_a);
    if (t < t_a - slack || t > t_b + slack)
        throw DegenerateInputError("t lies outside the segment");
    const detail::PowerLawModel model = model_of(sol.chart.params);
    return sol.chart.theta0 +
           model.phi_after(sol.chart.E, sol.theta_a - sol.chart.theta0,
                           t - t_a);
}

std::pair<double, double> anchored_sin_cos(const BvpSolution& sol,
                                           double theta) {
    check::finite(theta, "theta");
    const double delta = sol.theta_b - sol.theta_a;
    const double sd = std::sin(delta);
    if (std::fabs(sd) < kSeparationFloor)
        throw DegenerateSeparationError(
            "endpoints a whole number of half-periods apart: anchored "
            "reconstruction is indeterminate");
    const detail::PowerLawModel model = model_of(sol.chart.params);
    const double y_a =
        model.position(sol.chart.E, sol.theta_a - sol.chart.theta0);
    const double y_b =
        model.position(sol.chart.E, sol.theta_b - sol.chart.theta0);
    const double w_a = model.signed_power(y_a);
    const double w_b = model.signed_power(y_b);
    const double a2 = std::sqrt(4.0 * sol.chart.E / sol.chart.params.k4);
    const double s =
        (w_b * std::sin(theta - sol.theta_a) + w_a * std::sin(sol.theta_b - theta)) /
        (a2 * sd);
    const double c =
        (w_b * std::cos(theta - sol.theta_a) - w_a * std::cos(sol.theta_b - theta)) /
        (a2 * sd);
    return {s, c};
}

double reconstruct_theta0(const BvpSolution& sol) {
    const double delta = sol.theta_b - sol.theta_a;
    const double sd = std::sin(delta);
    if (std::fabs(sd) < kSeparationFloor)
        throw DegenerateSeparationError(
            "endpoints a whole number of half-periods apart: anchor "
            "reconstruction is indeterminate");
    const detail::PowerLawModel model = model_of(sol.chart.params);
    const double y_a =
        model.position(sol.chart.E, sol.theta_a - sol.chart.theta0);
    const double y_b =
        model.position(sol.chart.E, sol.theta_b - sol.chart.theta0);
    const double w_a = model.signed_power(y_a);
    const double w_b = model.signed_power(y_b);
    // Both components carry a factor A^2 sin(delta); dividing by sgn(sd)
    // keeps the cos component proportional to the velocity sign at b, which
    // fixes the quadrant.
    const double s_part = (w_b * sd) * sgn(sd);
    const double c_part = (w_b * std::cos(delta) - w_a) * sgn(sd);
    const double phi_b = std::atan2(s_part, c_part);
    double anchor = sol.theta_b - phi_b;
    anchor = std::fmod(anchor, kTwoPi);
    if (anchor < 0.0) anchor += kTwoPi;
    return anchor;
}

}  // namespace qo::bvp
