#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qo/bvp.hpp"
#include "qo/extremal.hpp"
#include "qo/oracle.hpp"

using namespace qo;
namespace {

constexpr double kQuarterT = 0.927037338650685959216925173598;
constexpr double kPeriod = 3.70814935460274383686770069439;
constexpr double kQuarterS = 0.309012446216895319738975057866;
constexpr double kQuarterMI = 1.23604978486758127895590023146;

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

TEST_CASE("quarter-period integration reaches the turning point") {
    const OscillatorParams params(1.0, 4.0);
    const auto sol = oracle::integrate_newton(
        params, PhasePoint(0.0, 0.0, std::sqrt(2.0), 1.0), kQuarterT, 1e-12);
    const auto end = sol.at(kQuarterT);
    CHECK(std::fabs(end.y - 1.0) < 1e-10);
    CHECK(std::fabs(end.v) < 1e-9);
    CHECK(sol.stats().accepted > 10);
    CHECK(sol.stats().rhs_evaluations > 6 * sol.stats().accepted);
}

TEST_CASE("energy drift stays within ten times the requested tolerance") {
    const OscillatorParams params(1.0, 4.0);
    for (const double tol : {1e-8, 1e-10, 1e-13}) {
        const auto sol = oracle::integrate_newton(
            params, PhasePoint(0.0, 0.0, std::sqrt(2.0), 1.0), 3.0 * kPeriod, tol);
        CHECK(sol.stats().max_energy_drift <= 10.0 * tol);
    }
}

TEST_CASE("dense output interpolates between steps") {
    const OscillatorParams params(1.0, 4.0);
    const ExtremalChart chart(params, 1.0);
    const auto sol = oracle::integrate_newton(
        params, PhasePoint(0.0, 0.0, std::sqrt(2.0), 1.0), kPeriod, 1e-11);
    for (int j = 0; j <= 40; ++j) {
        const double t = kPeriod * j / 40.0;
        const auto state = sol.state_at(t);
        const double theta = extremal::theta_of_time(chart, t);
        CHECK(std::fabs(state[0] - extremal::position(chart, theta)) < 1e-8);
        CHECK(std::fabs(state[1] - extremal::velocity(chart, theta)) < 1e-8);
    }
    CHECK_THROWS_AS(sol.state_at(-0.5), DegenerateInputError);
    CHECK_THROWS_AS(sol.state_at(kPeriod + 0.5), DegenerateInputError);
}

TEST_CASE("quadrature anchors over the quarter segment") {
    const OscillatorParams params(1.0, 4.0);
    const auto sol = oracle::integrate_newton(
        params, PhasePoint(0.0, 0.0, std::sqrt(2.0), 1.0), kQuarterT, 1e-13);
    const double s = oracle::lagrangian_action_quadrature(sol, 0.0, kQuarterT);
    const double mi = oracle::momentum_quadrature(sol, 0.0, kQuarterT);
    CHECK(rel(s, kQuarterS) < 1e-10);
    CHECK(rel(mi, kQuarterMI) < 1e-10);
}

TEST_CASE("Lagrangian plus energy equals the momentum integrand everywhere") {
    // L + E = m v^2 pointwise, so the quadratures obey the same identity on
    // any window.
    const OscillatorParams params(1.3, 0.9);
    const double E = 2.2;
    const double v0 = std::sqrt(2.0 * E / params.m);
    const auto sol =
        oracle::integrate_newton(params, PhasePoint(0.0, 0.0, v0, params.m), 4.0, 1e-12);
    for (const auto& win : {std::pair{0.2, 1.1}, std::pair{0.0, 4.0}, std::pair{2.9, 3.0}}) {
        const double L = oracle::lagrangian_action_quadrature(sol, win.first, win.second);
        const double MI = oracle::momentum_quadrature(sol, win.first, win.second);
        const double dt = win.second - win.first;
        CHECK(std::fabs(L + E * dt - MI) < 1e-9 * std::max(1.0, std::fabs(MI)));
    }
    // Degenerate window integrates to zero.
    CHECK(oracle::lagrangian_action_quadrature(sol, 1.0, 1.0) == 0.0);
}

TEST_CASE("hierarchy force law: n = 3 turning point") {
    const HierarchyParams params(3, 1.0, 6.0);  // amplitude 1 at E = 1
    const double v0 = std::sqrt(2.0);
    const double t4 = 0.858657671127205524703362809815;
    const auto sol =
        oracle::integrate_newton(params, PhasePoint(0.0, 0.0, v0, 1.0), t4, 1e-12);
    const auto end = sol.at(t4);
    CHECK(std::fabs(end.y - 1.0) < 1e-9);
    CHECK(std::fabs(end.v) < 1e-8);
}

TEST_CASE("integration tolerance validation") {
    const OscillatorParams params(1.0, 1.0);
    const PhasePoint start(0.0, 0.5, 0.0, 1.0);
    CHECK_THROWS_AS(oracle::integrate_newton(params, start, 1.0, 0.0),
                    DegenerateInputError);
    CHECK_THROWS_AS(oracle::integrate_newton(params, start, 1.0, 0.5),
                    DegenerateInputError);
}

TEST_CASE("symplectic cross-check: bounded drift, no secular growth") {
    const OscillatorParams params(1.0, 4.0);
    const std::size_t steps_per_period = 2000;
    const auto one = oracle::integrate_verlet(
        params, PhasePoint(0.0, 0.0, std::sqrt(2.0), 1.0), kPeriod,
        steps_per_period);
    const auto ten = oracle::integrate_verlet(
        params, PhasePoint(0.0, 0.0, std::sqrt(2.0), 1.0), 10.0 * kPeriod,
        10 * steps_per_period);
    const auto drift = [&](const std::vector<PhasePoint>& path) {
        double worst = 0.0;
        for (const auto& p : path) {
            const double e = 0.5 * p.v * p.v + std::pow(p.y, 4);
            worst = std::max(worst, std::fabs(e - 1.0));
        }
        return worst;
    };
    const double d1 = drift(one);
    const double d10 = drift(ten);
    CHECK(d1 < 2e-5);
    // Same step size, ten times the horizon: the energy error must not
    // accumulate linearly the way a non-symplectic scheme would.
    CHECK(d10 < 4.0 * d1 + 1e-12);

    // Endpoint position against the closed form.
    const ExtremalChart chart(params, 1.0);
    const double theta_end = extremal::theta_of_time(chart, 10.0 * kPeriod);
    CHECK(std::fabs(ten.back().y - extremal::position(chart, theta_end)) < 5e-3);
}

TEST_CASE("fd gradients carry usable error estimates") {
    const ExtremalChart chart(OscillatorParams(1.0, 4.0), 1.0);
    const auto sol = bvp::from_chart(chart, 0.5, 1.3);
    const auto data = bvp::endpoints(sol);
    const BranchSelector branch(0, true);
    const auto g = oracle::fd_action_gradient(chart.params, data, branch,
                                              oracle::EndpointComponent::y_b);
    const double p_b = chart.params.m * extremal::velocity(chart, 1.3);
    CHECK(std::fabs(g.value - p_b) <= std::max(10.0 * g.error_estimate, 1e-8));
    CHECK(g.error_estimate < 1e-4 * std::fabs(p_b));
}
