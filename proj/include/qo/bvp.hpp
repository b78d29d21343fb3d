#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qo/types.hpp"

namespace qo::bvp {

// A solved two-point segment: the extremal's chart plus the endpoint angles
// on it, in the same angular frame as chart.theta0. Solutions produced by
// solve() normalize the chart to theta0 = 0 and place t0 so the chart's
// clock reproduces the endpoint times; from_chart() keeps the caller's
// anchors.
struct BvpSolution {
    ExtremalChart chart;
    double theta_a;
    double theta_b;
    // Scaled residuals: position mismatch at a and b relative to the
    // amplitude, elapsed-time mismatch relative to dt.
    std::array<double, 3> residuals;
};

// Lowest-energy extremal through the endpoints on the requested branch.
// Throws NoSolutionError when the branch is infeasible, NonConvergenceError
// when candidates were found but none reached tol.
BvpSolution solve(const OscillatorParams& params, const BoundaryData& data,
                  const BranchSelector& branch, double tol = 1e-10);

// Every extremal on the branch, ascending in energy. A branch label does not
// always pin the extremal uniquely: distinct energies can share crossing
// count and initial velocity sign.
std::vector<BvpSolution> solve_all(const OscillatorParams& params,
                                   const BoundaryData& data,
                                   const BranchSelector& branch,
                                   double tol = 1e-10);

// Newton polish from a previously solved nearby segment; falls back to the
// full solve when the seed does not converge. Used for finite-difference
// stencils and sweep continuation.
BvpSolution solve_seeded(const OscillatorParams& params,
                         const BoundaryData& data, const BranchSelector& branch,
                         const BvpSolution& seed, double tol = 1e-10);

// Forward construction: wrap a chart and two angles as a solved segment
// (residuals identically zero by construction).
BvpSolution from_chart(const ExtremalChart& chart, double theta_a,
                       double theta_b);

// Endpoint times and data reproduced from the solution.
std::pair<double, double> endpoint_times(const BvpSolution& sol);
BoundaryData endpoints(const BvpSolution& sol);

// Angle at physical time t inside the segment, by inverting the time map.
// Throws DegenerateSeparationError when the endpoints are a whole number of
// half-periods apart (the endpoint-anchored reconstruction is singular
// there), DegenerateInputError when t lies outside the segment.
double interpolate(const BvpSolution& sol, double t);

// sin and cos of (theta - theta0) at an interior angle, reconstructed from
// the endpoint displacements alone. Same degeneracy condition as
// interpolate.
std::pair<double, double> anchored_sin_cos(const BvpSolution& sol,
                                           double theta);

// Recover the chart anchor from endpoint data, normalized to [0, 2*pi).
// The quadrant is fixed by the velocity sign at b.
double reconstruct_theta0(const BvpSolution& sol);

}  // namespace qo::bvp
