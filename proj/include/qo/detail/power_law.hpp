#pragma once

#include <array>
#include <vector>

#include "qo/types.hpp"

namespace qo::detail {

// Closed-form machinery shared by the quartic front end (n = 2) and the
// general even-power family V(y) = k y^{2n} / (2n).
//
// All angles here are measured from the chart anchor, phi = theta - theta0,
// so phi = 0 is an upward zero crossing. On an extremal of energy E,
//
//   y(phi)  = A sgn(sin phi) |sin phi|^{1/n},   A = (2 n E / k)^{1/(2n)}
//   v(phi)  = sqrt(2E/m) cos phi
//   dt/dphi = C_t |sin phi|^{1/n - 1},          C_t = A / (n sqrt(2E/m))
//
// The time kernel is integrable but singular at multiples of pi for n >= 2;
// every quadrature below substitutes it smooth before integrating.
class PowerLawModel {
public:
    PowerLawModel(int n, double mass, double stiffness);

    int n() const { return n_; }
    double mass() const { return m_; }
    double stiffness() const { return k_; }

    double amplitude(double E) const;
    double position(double E, double phi) const;
    double velocity(double E, double phi) const;

    // sgn(y) |y|^n, the quantity that evolves as A^n sin(phi).
    double signed_power(double y) const;

    // Potential energy at y; the smallest E whose amplitude reaches |y|.
    double min_energy(double y) const;

    double time_prefactor(double E) const;  // C_t above
    double period(double E) const;

    // Angular primitive P(phi) = integral of |sin|^{1/n-1} from 0 to phi.
    // Odd in phi, strictly increasing, P(pi/2) = quarter_angular().
    double quarter_angular() const { return quarter_; }
    double angular_primitive(double phi) const;
    double invert_angular(double target) const;

    // Elapsed time along the extremal between two angles (signed), and the
    // angle reached after a signed elapsed time.
    double time_between(double E, double phi_lo, double phi_hi) const;
    double phi_after(double E, double phi_from, double elapsed) const;

    // Energy of the extremal through both endpoints for a trial angular
    // separation, written so the generic cancellation at whole half-period
    // separations is removed analytically:
    //   A^{2n} sin^2(dtheta) = (w_b - w_a)^2 + 4 w_a w_b sin^2(dtheta/2)
    // with w = sgn(y)|y|^n. Returns +inf when sin(dtheta) == 0.
    double energy_from_separation(double w_a, double w_b, double dtheta) const;

private:
    int n_;
    double m_;
    double k_;
    double quarter_;

    double kernel(double u) const;          // smooth substituted time kernel
    double quarter_partial(double s) const; // P restricted to [0, pi/2]
    double invert_quarter_partial(double target) const;
};

// Zeros of y strictly between the two angles. Exact multiples of pi at
// either end do not count themselves.
int count_crossings(double phi_a, double phi_b);

struct SolveControls {
    double tol = 1e-10;     // scaled residual target
    int scan_points = 481;  // base resolution of the separation scan
    int cluster_points = 26;
    int max_newton = 16;
};

// One root of the two-point problem in chart coordinates.
struct PowerLawRoot {
    double E;
    double phi_a;
    double phi_b;
    // Scaled residuals: position at a and b relative to the amplitude,
    // elapsed time relative to dt.
    std::array<double, 3> residuals;
};

// All extremals through the boundary data on the requested branch, sorted by
// ascending energy. Empty result means no such extremal exists; throws
// NonConvergenceError only when candidate roots were bracketed but none
// could be polished below tol.
std::vector<PowerLawRoot> solve_all_roots(const PowerLawModel& model,
                                          const BoundaryData& data,
                                          const BranchSelector& branch,
                                          const SolveControls& controls = {});

// Lowest-energy root; throws NoSolutionError when none exists.
PowerLawRoot solve_min_energy(const PowerLawModel& model,
                              const BoundaryData& data,
                              const BranchSelector& branch,
                              const SolveControls& controls = {});

// Damped-Newton polish from an externally supplied starting point (used by
// finite-difference stencils and sweep continuation). Falls back to the full
// scan when the guess does not converge to the requested branch.
PowerLawRoot solve_from_guess(const PowerLawModel& model,
                              const BoundaryData& data,
                              const BranchSelector& branch, double energy_guess,
                              double phi_a_guess,
                              const SolveControls& controls = {});

}  // namespace qo::detail
