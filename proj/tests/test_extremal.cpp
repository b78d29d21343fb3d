#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "qo/extremal.hpp"

using namespace qo;
namespace {

constexpr double kPi = std::numbers::pi;

// (m=1, k4=4, E=1): amplitude 1, quarter period known to 30 digits.
const ExtremalChart& unit_chart() {
    static const ExtremalChart chart(OscillatorParams(1.0, 4.0), 1.0);
    return chart;
}

constexpr double kQuarterT = 0.927037338650685959216925173598;
constexpr double kPeriod = 3.70814935460274383686770069439;

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

TEST_CASE("position and velocity at the anchors") {
    const auto& chart = unit_chart();
    CHECK(extremal::position(chart, 0.0) == 0.0);
    CHECK(extremal::velocity(chart, 0.0) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(extremal::position(chart, kPi / 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(extremal::velocity(chart, kPi / 2) == doctest::Approx(0.0).epsilon(1e-15));

    // Constructed multiples of pi must give y = 0 exactly, not just to
    // rounding: the fractional-power profile amplifies any residue.
    for (int k = -6; k <= 6; ++k) {
        CHECK(extremal::position(chart, k * kPi) == 0.0);
    }
    CHECK(extremal::position(chart, kPi + 0.3) ==
          doctest::Approx(-extremal::position(chart, 0.3)).epsilon(1e-15));
}

TEST_CASE("quarter period matches the frozen anchor") {
    const auto& chart = unit_chart();
    const double t4 = extremal::time_of_theta(chart, {0.0, kPi / 2});
    CHECK(rel(t4, kQuarterT) < 1e-12);
    CHECK(rel(extremal::period(chart), kPeriod) < 1e-12);
}

TEST_CASE("time map is additive across crossings") {
    const auto& chart = unit_chart();
    const double whole = extremal::time_of_theta(chart, {0.1, 7.4});
    const double split = extremal::time_of_theta(chart, {0.1, kPi}) +
                         extremal::time_of_theta(chart, {kPi, 2.0 * kPi}) +
                         extremal::time_of_theta(chart, {2.0 * kPi, 7.4});
    CHECK(rel(split, whole) < 1e-13);

    const double neg = extremal::time_of_theta(chart, {-2.6, 0.4});
    const double neg_split = extremal::time_of_theta(chart, {-2.6, 0.0}) +
                             extremal::time_of_theta(chart, {0.0, 0.4});
    CHECK(rel(neg_split, neg) < 1e-13);
}

TEST_CASE("period scaling in energy") {
    // T ~ E^{-1/4} for the quartic well.
    const OscillatorParams p(1.3, 0.8);
    const ExtremalChart low(p, 0.5);
    const ExtremalChart high(p, 8.0);
    const double ratio = extremal::period(high) / extremal::period(low);
    CHECK(rel(ratio, std::pow(16.0, -0.25)) < 1e-12);
}

TEST_CASE("theta/time round trips, including near crossings") {
    const ExtremalChart chart(OscillatorParams(0.7, 2.1), 3.0, 0.9, -0.4);
    for (const double dtheta :
         {0.05, 0.4, 1.3, kPi - 1e-4, kPi, kPi + 1e-4, 4.4, 2.0 * kPi, 9.9}) {
        const double theta = chart.theta0 + dtheta;
        const double t = chart.t0 +
                         extremal::time_of_theta(chart, {chart.theta0, theta});
        const double back = extremal::theta_of_time(chart, t);
        CHECK(std::fabs(back - theta) < 1e-9);
    }
    // Negative times invert too.
    const double t_neg = chart.t0 - extremal::time_of_theta(
                                        chart, {chart.theta0 - 2.2, chart.theta0});
    CHECK(std::fabs(extremal::theta_of_time(chart, t_neg) -
                    (chart.theta0 - 2.2)) < 1e-9);
}

TEST_CASE("theta advances by 2 pi per period") {
    const auto& chart = unit_chart();
    const double T = extremal::period(chart);
    const double theta1 = extremal::theta_of_time(chart, 0.37);
    const double theta2 = extremal::theta_of_time(chart, 0.37 + 3.0 * T);
    CHECK(std::fabs(theta2 - theta1 - 6.0 * kPi) < 1e-8);
}

TEST_CASE("trajectory samples agree with the angular maps") {
    const ExtremalChart chart(OscillatorParams(1.0, 4.0), 2.5, 0.3, 0.1);
    std::vector<double> times;
    const double T = extremal::period(chart);
    for (int j = 0; j <= 64; ++j) times.push_back(chart.t0 + T * j / 64.0 - 0.2);
    const auto rows = extremal::trajectory(chart, times);
    REQUIRE(rows.size() == times.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        CHECK(rows[j].t == times[j]);
        const double theta = extremal::theta_of_time(chart, times[j]);
        CHECK(std::fabs(rows[j].y - extremal::position(chart, theta)) < 1e-9);
        CHECK(std::fabs(rows[j].v - extremal::velocity(chart, theta)) < 1e-9);
        CHECK(rows[j].p == doctest::Approx(chart.params.m * rows[j].v).epsilon(1e-15));
        // Energy is conserved along the closed form to rounding.
        const double energy = 0.5 * chart.params.m * rows[j].v * rows[j].v +
                              chart.params.k4 * std::pow(rows[j].y, 4) / 4.0;
        CHECK(rel(energy, chart.E) < 1e-13);
    }
}

TEST_CASE("interval validation") {
    const auto& chart = unit_chart();
    CHECK_THROWS_AS(extremal::time_of_theta(chart, {1.0, 0.9}), DegenerateInputError);
    CHECK_THROWS_AS(extremal::time_of_theta(chart, {0.0, 2e6}), DegenerateInputError);
}

TEST_CASE("harmonic companion: squared displacement advances as a sinusoid") {
    const ExtremalChart chart(OscillatorParams(1.4, 2.2), 3.1, 1.1, 0.0);
    const auto map = extremal::ho_map(chart, 2.0);
    CHECK(map.omega == 2.0);
    CHECK(map.k2 == doctest::Approx(chart.params.m * 4.0).epsilon(1e-15));

    const double a2 = std::sqrt(4.0 * chart.E / chart.params.k4);
    for (const double dphi : {0.0, 0.3, 1.2, kPi / 2, 2.9, 4.0, 6.0}) {
        const double theta = chart.theta0 + dphi;
        const double w = extremal::ho_position(map, chart, theta);
        CHECK(std::fabs(w - a2 * std::sin(dphi)) < 1e-13 * a2);
        // Companion time is linear in theta by construction.
        CHECK(extremal::ho_time(map, chart, theta) ==
              doctest::Approx(map.t_hat0 + dphi / map.omega).epsilon(1e-13));
    }

    // The companion motion w(t_hat) solves the harmonic equation: its own
    // energy in the (m, k2) oscillator is constant across theta.
    const double e0 = 0.5 * chart.params.m *
                          std::pow(a2 * map.omega * std::cos(0.0), 2) +
                      0.5 * map.k2 * std::pow(a2 * std::sin(0.0), 2);
    for (const double dphi : {0.4, 1.0, 2.0}) {
        const double e = 0.5 * chart.params.m *
                             std::pow(a2 * map.omega * std::cos(dphi), 2) +
                         0.5 * map.k2 * std::pow(a2 * std::sin(dphi), 2);
        CHECK(rel(e, e0) < 1e-13);
    }
}
