#pragma once

#include <array>
#include <vector>

#include "qo/action.hpp"
#include "qo/extremal.hpp"
#include "qo/types.hpp"

namespace qo::hierarchy {

// Solved two-point segment for a general power index; mirrors
// bvp::BvpSolution.
struct HierarchySolution {
    HierarchyChart chart;
    double theta_a;
    double theta_b;
    std::array<double, 3> residuals;
};

double h_position(const HierarchyChart& chart, double theta);
double h_velocity(const HierarchyChart& chart, double theta);
double h_amplitude(const HierarchyChart& chart);
double h_period(const HierarchyChart& chart);

double h_time_of_theta(const HierarchyChart& chart,
                       const extremal::ThetaInterval& span);
double h_theta_of_time(const HierarchyChart& chart, double t);

HierarchySolution h_solve(const HierarchyParams& params,
                          const BoundaryData& data,
                          const BranchSelector& branch, double tol = 1e-10);
std::vector<HierarchySolution> h_solve_all(const HierarchyParams& params,
                                           const BoundaryData& data,
                                           const BranchSelector& branch,
                                           double tol = 1e-10);
HierarchySolution h_solve_seeded(const HierarchyParams& params,
                                 const BoundaryData& data,
                                 const BranchSelector& branch,
                                 const HierarchySolution& seed,
                                 double tol = 1e-10);
HierarchySolution h_from_chart(const HierarchyChart& chart, double theta_a,
                               double theta_b);
std::pair<double, double> h_endpoint_times(const HierarchySolution& sol);

// Closed-form segment action for the general power index:
//   S = (n-1)/(n+1) * E * dt + [K_n * sgn(sin phi)|sin phi|^{1/n} cos phi]_a^b
// with K_n = sqrt(2 E m) * amplitude / (n + 1). For n = 2 this reduces to
// the quartic breakdown, for n = 1 to the harmonic principal function.
ActionBreakdown h_action_of(const HierarchySolution& sol);
ActionBreakdown h_action(const HierarchyParams& params,
                         const BoundaryData& data,
                         const BranchSelector& branch, double tol = 1e-10);

action::EndpointDerivatives h_endpoint_derivatives(
    const HierarchySolution& sol);

// Textbook harmonic principal function for V = m omega^2 y^2 / 2, valid away
// from focal separations (sin(omega dt) == 0 throws
// DegenerateSeparationError).
double ho_principal_function(double m, double omega, const BoundaryData& data);

}  // namespace qo::hierarchy
