#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace qo {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid or degenerate input: non-finite values, non-positive mass or
// stiffness, the zero-energy rest solution, out-of-range tolerances.
struct DegenerateInputError : Error {
    using Error::Error;
};

// The requested branch admits no extremal for any energy.
struct NoSolutionError : Error {
    using Error::Error;
};

// An iteration budget was exhausted. Carries the best scaled residuals seen,
// ordered (position at a, position at b, elapsed time).
struct NonConvergenceError : Error {
    NonConvergenceError(const std::string& what, std::array<double, 3> best)
        : Error(what), best_residuals(best) {}
    std::array<double, 3> best_residuals{};
};

// Endpoints separated by a whole number of half-periods: endpoint-anchored
// interpolation and reconstruction are indeterminate there.
struct DegenerateSeparationError : Error {
    using Error::Error;
};

// A boundary-anchored action form was evaluated at one of its poles.
struct PoleError : Error {
    using Error::Error;
};

// Adaptive quadrature produced a non-finite value or hit its subdivision
// floor with the error estimate still above target.
struct QuadratureError : Error {
    using Error::Error;
};

// A finite-difference stencil straddled a change of solution branch, so the
// difference quotient does not approximate a derivative.
struct InvalidStencilError : Error {
    using Error::Error;
};

}  // namespace qo
