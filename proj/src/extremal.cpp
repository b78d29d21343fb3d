#include "qo/extremal.hpp"

#include <cmath>

#include "qo/detail/power_law.hpp"

namespace qo::extremal {

namespace {

detail::PowerLawModel model_of(const ExtremalChart& chart) {
    return detail::PowerLawModel(2, chart.params.m, chart.params.k4);
}

}  // namespace

double position(const ExtremalChart& chart, double theta) {
    check::finite(theta, "theta");
    return model_of(chart).position(chart.E, theta - chart.theta0);
}

double velocity(const ExtremalChart& chart, double theta) {
    check::finite(theta, "theta");
    return model_of(chart).velocity(chart.E, theta - chart.theta0);
}

double time_of_theta(const ExtremalChart& chart, const ThetaInterval& span) {
    const detail::PowerLawModel model = model_of(chart);
    return model.time_between(chart.E, span.lo - chart.theta0,
                              span.hi - chart.theta0);
}

double theta_of_time(const ExtremalChart& chart, double t) {
    check::finite(t, "t");
    const detail::PowerLawModel model = model_of(chart);
    return chart.theta0 + model.phi_after(chart.E, 0.0, t - chart.t0);
}

double period(const ExtremalChart& chart) {
    return model_of(chart).period(chart.E);
}

std::vector<PhasePoint> trajectory(const ExtremalChart& chart,
                                   std::span<const double> times) {
    const detail::PowerLawModel model = model_of(chart);
    std::vector<PhasePoint> out;
    out.reserve(times.size());
    for (const double t : times) {
        check::finite(t, "t");
        const double phi = model.phi_after(chart.E, 0.0, t - chart.t0);
        out.emplace_back(t, model.position(chart.E, phi),
                         model.velocity(chart.E, phi), chart.params.m);
    }
    return out;
}

HoCorrespondence ho_map(const ExtremalChart& chart, double omega) {
    check::finite_positive(omega, "omega");
    return HoCorrespondence{omega, chart.params.m * omega * omega, 0.0};
}

// The squared displacement w = y|y| = A^2 sin(theta - theta0) advances
// harmonically in theta, so in the companion clock t_hat = t_hat0 +
// (theta - theta0)/omega it is an exact sinusoid of frequency omega.
double ho_position(const HoCorrespondence& map, const ExtremalChart& chart,
                   double theta) {
    (void)map;
    const detail::PowerLawModel model = model_of(chart);
    return model.signed_power(model.position(chart.E, theta - chart.theta0));
}

double ho_time(const HoCorrespondence& map, const ExtremalChart& chart,
               double theta) {
    return map.t_hat0 + (theta - chart.theta0) / map.omega;
}

}  // namespace qo::extremal
