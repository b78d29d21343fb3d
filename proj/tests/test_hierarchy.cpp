#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qo/action.hpp"
#include "qo/bvp.hpp"
#include "qo/extremal.hpp"
#include "qo/hierarchy.hpp"
#include "qo/oracle.hpp"

using namespace qo;
namespace {

constexpr double kPi = std::numbers::pi;

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

TEST_CASE("n = 2 is the quartic oscillator") {
    const OscillatorParams qp(1.3, 2.6);
    const HierarchyParams hp(2, 1.3, 2.6);
    const ExtremalChart qc(qp, 3.1, 0.4, -0.2);
    const HierarchyChart hc(hp, 3.1, 0.4, -0.2);

    // Kinematics share one engine: samples agree exactly.
    for (const double theta : {0.4, 1.0, 2.2, 3.9, 6.0}) {
        CHECK(hierarchy::h_position(hc, theta) == extremal::position(qc, theta));
        CHECK(hierarchy::h_velocity(hc, theta) == extremal::velocity(qc, theta));
    }
    CHECK(hierarchy::h_period(hc) == extremal::period(qc));
    CHECK(hierarchy::h_amplitude(hc) == doctest::Approx(amplitude(qc)).epsilon(1e-15));

    // The action assembles through a different prefactor route; agreement is
    // to rounding, not bitwise.
    const auto hb = hierarchy::h_action_of(hierarchy::h_from_chart(hc, 0.8, 2.9));
    const auto qb = action::evaluate(bvp::from_chart(qc, 0.8, 2.9));
    CHECK(rel(hb.total, qb.total) < 1e-13);
    CHECK(rel(hb.momentum_integral, qb.momentum_integral) < 1e-13);
    CHECK(rel(hb.boundary_term_b, qb.boundary_term_b) < 1e-12);
}

TEST_CASE("n = 1 is the textbook harmonic oscillator") {
    const HierarchyParams hp(1, 1.0, 1.0);  // omega = 1
    const HierarchyChart chart(hp, 0.5);

    CHECK(rel(hierarchy::h_period(chart), 2.0 * kPi) < 1e-12);
    const double A = std::sqrt(2.0 * chart.E / hp.k2n);
    for (const double theta : {0.2, 1.0, 2.5, 4.0}) {
        CHECK(std::fabs(hierarchy::h_position(chart, theta) - A * std::sin(theta)) <
              1e-12 * A);
        CHECK(std::fabs(hierarchy::h_velocity(chart, theta) - A * std::cos(theta)) <
              1e-12 * A);
    }

    // Frozen anchor: principal function for (0, 0.3) -> (1, 0.7) at m = 1,
    // omega = 1, computed once at 30 digits.
    const BoundaryData data(SpacetimePoint(0.0, 0.3), SpacetimePoint(1.0, 0.7));
    const double ref = -0.0633561135924495515430740888863;
    CHECK(rel(hierarchy::ho_principal_function(1.0, 1.0, data), ref) < 1e-12);

    // The general closed form reduces to it through the solved segment.
    const auto sol = hierarchy::h_solve(hp, data, BranchSelector(0, true));
    CHECK(rel(hierarchy::h_action_of(sol).total, ref) < 1e-10);
    // Direct solve: E = (v^2 + y^2)/2 of the interpolating sinusoid.
    const double beta = (0.7 - 0.3 * std::cos(1.0)) / std::sin(1.0);
    CHECK(rel(sol.chart.E, 0.5 * (beta * beta + 0.09)) < 1e-10);
}

TEST_CASE("n = 1 energy term drops out of the action") {
    // (n-1)/(n+1) = 0: the closed form is purely boundary differences.
    const HierarchyChart chart(HierarchyParams(1, 1.4, 2.0), 1.1);
    const auto b = hierarchy::h_action_of(hierarchy::h_from_chart(chart, 0.3, 1.9));
    CHECK(std::fabs(b.total - (b.boundary_term_b - b.boundary_term_a)) <
          1e-13 * std::fabs(b.total));
}

TEST_CASE("focal separations of the harmonic reference") {
    const BoundaryData focal(SpacetimePoint(0.0, 0.3), SpacetimePoint(kPi, 0.7));
    CHECK_THROWS_AS(hierarchy::ho_principal_function(1.0, 1.0, focal),
                    DegenerateSeparationError);
}

TEST_CASE("n = 3 frozen quarter period") {
    // (m=1, k6=6, E=1): amplitude 1; values frozen at 30 digits.
    const HierarchyChart chart(HierarchyParams(3, 1.0, 6.0), 1.0);
    CHECK(hierarchy::h_amplitude(chart) == doctest::Approx(1.0).epsilon(1e-14));
    const double t4 = hierarchy::h_time_of_theta(chart, {0.0, kPi / 2});
    CHECK(rel(t4, 0.858657671127205524703362809815) < 1e-12);
    CHECK(rel(hierarchy::h_period(chart), 3.43463068450882209881345123926) < 1e-12);
}

TEST_CASE("period scaling in energy follows the power index") {
    // T ~ E^{(1-n)/(2n)}.
    for (const int n : {1, 2, 3, 4}) {
        const HierarchyParams hp(n, 0.9, 1.7);
        const HierarchyChart lo(hp, 0.4);
        const HierarchyChart hi(hp, 0.4 * 81.0);
        const double got = hierarchy::h_period(hi) / hierarchy::h_period(lo);
        const double want = std::pow(81.0, (1.0 - n) / (2.0 * n));
        CHECK(rel(got, want) < 1e-11);
    }
}

TEST_CASE("closed form vs Lagrangian oracle for n = 3 and n = 4") {
    struct Case {
        int n;
        double m, k, E, theta_a, theta_b;
    };
    const Case cases[] = {
        {3, 1.0, 6.0, 1.0, 0.35, 1.3},
        {3, 0.8, 1.4, 2.7, 2.1, 5.6},
        {4, 1.2, 2.0, 0.6, 0.4, 3.8},
        {4, 1.0, 1.0, 5.0, -0.7, 1.1},
    };
    for (const auto& c : cases) {
        const HierarchyChart chart(HierarchyParams(c.n, c.m, c.k), c.E);
        const auto sol = hierarchy::h_from_chart(chart, c.theta_a, c.theta_b);
        const auto times = hierarchy::h_endpoint_times(sol);
        const double y_a = hierarchy::h_position(chart, c.theta_a);
        const double v_a = hierarchy::h_velocity(chart, c.theta_a);
        const auto ode = oracle::integrate_newton(
            chart.params, PhasePoint(times.first, y_a, v_a, c.m), times.second,
            1e-12);
        const double ref =
            oracle::lagrangian_action_quadrature(ode, times.first, times.second);
        const double closed = hierarchy::h_action_of(sol).total;
        const double scale = std::max(std::fabs(closed),
                                      0.1 * c.E * (times.second - times.first));
        CHECK(std::fabs(closed - ref) / scale < 1e-9);
    }
}

TEST_CASE("energy-term coefficient is (n-1)/(n+1)") {
    for (const int n : {1, 2, 3, 4, 5}) {
        const HierarchyChart chart(HierarchyParams(n, 1.1, 0.8), 2.3);
        const auto b = hierarchy::h_action_of(hierarchy::h_from_chart(chart, 0.45, 2.75));
        const auto times = hierarchy::h_endpoint_times(
            hierarchy::h_from_chart(chart, 0.45, 2.75));
        const double e_dt = chart.E * (times.second - times.first);
        const double coeff = (b.total - (b.boundary_term_b - b.boundary_term_a)) / e_dt;
        CHECK(std::fabs(coeff - (n - 1.0) / (n + 1.0)) < 1e-12);
    }
}

TEST_CASE("hierarchy solver round trips a generated segment") {
    const HierarchyChart chart(HierarchyParams(3, 1.2, 1.9), 1.7, 0.0, 0.3);
    const auto truth = hierarchy::h_from_chart(chart, 0.6, 3.5);
    const auto times = hierarchy::h_endpoint_times(truth);
    const BoundaryData data(
        SpacetimePoint(times.first, hierarchy::h_position(chart, 0.6)),
        SpacetimePoint(times.second, hierarchy::h_position(chart, 3.5)));
    // One zero crossing strictly inside (0.6, 3.5); rising at the left edge.
    const BranchSelector branch(1, true);
    const auto sol = hierarchy::h_solve(chart.params, data, branch);
    CHECK(rel(sol.chart.E, chart.E) < 1e-8);
    for (const double r : sol.residuals) CHECK(std::fabs(r) <= 1e-10);

    // Seeded re-solve converges on the perturbed segment.
    const BoundaryData nudged(SpacetimePoint(times.first, data.a.y * 1.002),
                              SpacetimePoint(times.second, data.b.y));
    const auto moved = hierarchy::h_solve_seeded(chart.params, nudged, branch, sol);
    for (const double r : moved.residuals) CHECK(std::fabs(r) <= 1e-10);
}

TEST_CASE("harmonic zero-to-zero endpoints") {
    const HierarchyParams hp(1, 1.0, 1.0);  // period 2 pi
    // Elapsed time equal to a half-period: a whole family of extremals.
    const BoundaryData resonant(SpacetimePoint(0.0, 0.0), SpacetimePoint(kPi, 0.0));
    CHECK_THROWS_AS(hierarchy::h_solve(hp, resonant, BranchSelector(0, true)),
                    DegenerateSeparationError);
    // Any other elapsed time: no extremal at all on this branch.
    const BoundaryData off(SpacetimePoint(0.0, 0.0), SpacetimePoint(1.0, 0.0));
    CHECK_THROWS_AS(hierarchy::h_solve(hp, off, BranchSelector(0, true)),
                    NoSolutionError);
}

TEST_CASE("endpoint derivatives mirror the quartic convention") {
    const HierarchyChart chart(HierarchyParams(3, 1.5, 2.2), 2.9);
    const auto sol = hierarchy::h_from_chart(chart, 0.5, 2.1);
    const auto der = hierarchy::h_endpoint_derivatives(sol);
    CHECK(der.H_a == doctest::Approx(chart.E).epsilon(1e-15));
    CHECK(der.p_a == doctest::Approx(1.5 * hierarchy::h_velocity(chart, 0.5))
                         .epsilon(1e-14));
    CHECK(der.p_b == doctest::Approx(1.5 * hierarchy::h_velocity(chart, 2.1))
                         .epsilon(1e-14));
}

TEST_CASE("h_action solves and evaluates in one step") {
    const HierarchyParams hp(2, 1.0, 4.0);
    const HierarchyChart chart(hp, 1.0);
    const auto truth = hierarchy::h_from_chart(chart, 0.3, 1.4);
    const auto times = hierarchy::h_endpoint_times(truth);
    const BoundaryData data(
        SpacetimePoint(times.first, hierarchy::h_position(chart, 0.3)),
        SpacetimePoint(times.second, hierarchy::h_position(chart, 1.4)));
    const auto direct = hierarchy::h_action(hp, data, BranchSelector(0, true));
    CHECK(rel(direct.total, hierarchy::h_action_of(truth).total) < 1e-9);
}
