#pragma once

#include <cmath>
#include <string>

#include "qo/errors.hpp"

namespace qo {

namespace check {

inline void finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw DegenerateInputError(std::string(name) + " must be finite");
}

inline void finite_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
        throw DegenerateInputError(std::string(name) + " must be finite and > 0");
}

}  // namespace check

// Mass and stiffness of the quartic well V(y) = k4 y^4 / 4.
struct OscillatorParams {
    double m;
    double k4;

    OscillatorParams(double mass, double stiffness) : m(mass), k4(stiffness) {
        check::finite_positive(m, "m");
        check::finite_positive(k4, "k4");
    }
};

// One member of the even-power family V(y) = k2n y^{2n} / (2n).
// n = 1 is the harmonic oscillator, n = 2 the quartic one.
struct HierarchyParams {
    int n;
    double m;
    double k2n;

    HierarchyParams(int power, double mass, double stiffness)
        : n(power), m(mass), k2n(stiffness) {
        if (n < 1) throw DegenerateInputError("power index n must be >= 1");
        check::finite_positive(m, "m");
        check::finite_positive(k2n, "k2n");
    }
};

// A complete description of one quartic extremal: its energy plus the phase
// anchor (theta0, t0) where the trajectory crosses y = 0 moving upward.
// E = 0 (the rest solution y == 0) has no angular chart and is rejected.
struct ExtremalChart {
    OscillatorParams params;
    double E;
    double theta0;
    double t0;

    ExtremalChart(OscillatorParams p, double energy, double theta_anchor = 0.0,
                  double time_anchor = 0.0)
        : params(p), E(energy), theta0(theta_anchor), t0(time_anchor) {
        if (!std::isfinite(E) || E <= 0.0)
            throw DegenerateInputError(
                "chart requires E > 0: the rest solution has no angular chart");
        check::finite(theta0, "theta0");
        check::finite(t0, "t0");
    }
};

// Same anchoring convention for a general power index.
struct HierarchyChart {
    HierarchyParams params;
    double E;
    double theta0;
    double t0;

    HierarchyChart(HierarchyParams p, double energy, double theta_anchor = 0.0,
                   double time_anchor = 0.0)
        : params(p), E(energy), theta0(theta_anchor), t0(time_anchor) {
        if (!std::isfinite(E) || E <= 0.0)
            throw DegenerateInputError(
                "chart requires E > 0: the rest solution has no angular chart");
        check::finite(theta0, "theta0");
        check::finite(t0, "t0");
    }
};

// An endpoint (t, y) of a boundary-value segment.
struct SpacetimePoint {
    double t;
    double y;

    SpacetimePoint(double time, double position) : t(time), y(position) {
        check::finite(t, "t");
        check::finite(y, "y");
    }
};

// A phase-space sample along a trajectory; p is always m*v.
struct PhasePoint {
    double t;
    double y;
    double v;
    double p;

    PhasePoint(double time, double position, double velocity, double mass)
        : t(time), y(position), v(velocity), p(mass * velocity) {}
};

// Ordered endpoint pair of a boundary-value problem.
struct BoundaryData {
    SpacetimePoint a;
    SpacetimePoint b;

    BoundaryData(SpacetimePoint start, SpacetimePoint end) : a(start), b(end) {
        if (!(b.t > a.t))
            throw DegenerateInputError("boundary data requires b.t > a.t");
    }
};

// Discrete branch label of a BVP solution: how many zeros of y lie strictly
// between the endpoints, and the velocity sign at the first endpoint.
struct BranchSelector {
    int crossings;
    bool rising_at_a;

    explicit BranchSelector(int zero_crossings = 0, bool rising = true)
        : crossings(zero_crossings), rising_at_a(rising) {
        if (crossings < 0)
            throw DegenerateInputError("crossings must be >= 0");
    }
};

// The evaluated action of a segment, split into its closed-form pieces:
//   total = boundary_term_b - boundary_term_a + (coefficient) * E * dt
//   total = momentum_integral - energy_term
// holds to rounding for every form.
struct ActionBreakdown {
    double momentum_integral;
    double energy_term;
    double boundary_term_b;
    double boundary_term_a;
    double total;
};

// Turning displacement of the quartic extremal: the positive y where the
// potential equals E.
inline double amplitude(const ExtremalChart& chart) {
    return std::pow(4.0 * chart.E / chart.params.k4, 0.25);
}

}  // namespace qo
