#pragma once

#include <span>
#include <vector>

#include "qo/types.hpp"

namespace qo::extremal {

// Closed angular interval [lo, hi]; spans are capped so the half-period cell
// count stays well inside exact integer range.
struct ThetaInterval {
    double lo;
    double hi;

    ThetaInterval(double low, double high) : lo(low), hi(high) {
        check::finite(lo, "interval lo");
        check::finite(hi, "interval hi");
        if (hi < lo)
            throw DegenerateInputError("interval requires hi >= lo");
        if (hi - lo >= 1e6)
            throw DegenerateInputError("interval span must be < 1e6 rad");
    }
};

// Parameters of the harmonic companion: the auxiliary oscillator whose phase
// advances with theta at unit rate. The map sends the quartic extremal's
// squared displacement onto a sinusoid of angular frequency omega.
struct HoCorrespondence {
    double omega;      // chosen frequency of the companion
    double k2;         // its stiffness, m * omega^2
    double t_hat0;     // companion time at which theta = theta0
};

// Displacement and velocity of the extremal at angle theta.
double position(const ExtremalChart& chart, double theta);
double velocity(const ExtremalChart& chart, double theta);

// Elapsed physical time while theta traverses the interval. The kernel's
// integrable endpoint singularities at crossings are substituted away, so
// intervals touching or spanning multiples of pi are fine.
double time_of_theta(const ExtremalChart& chart, const ThetaInterval& span);

// Inverse of the time map: the angle reached at physical time t.
double theta_of_time(const ExtremalChart& chart, double t);

// Oscillation period at the chart's energy.
double period(const ExtremalChart& chart);

// Samples (t, y, v, p) on an arbitrary time grid.
std::vector<PhasePoint> trajectory(const ExtremalChart& chart,
                                   std::span<const double> times);

// Harmonic companion map and the sinusoid it produces.
HoCorrespondence ho_map(const ExtremalChart& chart, double omega = 1.0);
double ho_position(const HoCorrespondence& map, const ExtremalChart& chart,
                   double theta);
double ho_time(const HoCorrespondence& map, const ExtremalChart& chart,
               double theta);

}  // namespace qo::extremal
