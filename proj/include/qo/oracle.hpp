#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qo/types.hpp"

namespace qo::oracle {

// Everything in this module is deliberately independent of the closed-form
// machinery: forces, potentials and trajectories are computed straight from
// Newton's equation in y, never through the angular parametrization. The
// verification suites compare the two routes against each other.

struct IntegratorStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evaluations = 0;
    double max_energy_drift = 0.0;  // max |E(t) - E(0)| / max(|E(0)|, eps)
};

// Dense-output trajectory from an embedded 5(4) Runge-Kutta pair. at(t)
// evaluates the quintic interpolant of the step containing t.
class OdeSolution {
public:
    double t_start() const { return t_start_; }
    double t_end() const { return t_end_; }
    double mass() const { return m_; }

    PhasePoint at(double t) const;
    std::array<double, 2> state_at(double t) const;  // (y, v)

    // Accepted-step endpoints, including the initial point.
    const std::vector<PhasePoint>& samples() const { return samples_; }
    const IntegratorStats& stats() const { return stats_; }

    double potential(double y) const;
    double energy_of(double y, double v) const;

private:
    friend OdeSolution integrate_impl(int n, double m, double k,
                                      const PhasePoint& initial, double t_end,
                                      double tol);
    friend double segment_quadrature(const OdeSolution& sol, double t_a,
                                     double t_b, bool lagrangian);

    struct DenseStep {
        double t0;
        double h;
        std::array<double, 2> r1, r2, r3, r4, r5;
    };

    std::array<double, 2> eval_step(const DenseStep& s, double t) const;
    const DenseStep& step_containing(double t) const;

    int n_ = 2;
    double m_ = 1.0;
    double k_ = 1.0;
    double t_start_ = 0.0;
    double t_end_ = 0.0;
    std::vector<DenseStep> dense_;
    std::vector<PhasePoint> samples_;
    IntegratorStats stats_;
};

// Integrate Newton's equation m y'' = -dV/dy from the initial phase point to
// t_end. tol controls the local error per step (both relative and absolute,
// scaled to the initial state).
OdeSolution integrate_newton(const OscillatorParams& params,
                             const PhasePoint& initial, double t_end,
                             double tol = 1e-10);
OdeSolution integrate_newton(const HierarchyParams& params,
                             const PhasePoint& initial, double t_end,
                             double tol = 1e-10);

// Quadratures over the dense output, integrated step segment by step
// segment. Empty interval returns 0; t_a <= t_b required, both inside the
// integration span.
double lagrangian_action_quadrature(const OdeSolution& sol, double t_a,
                                    double t_b);
double momentum_quadrature(const OdeSolution& sol, double t_a, double t_b);

// Fixed-step velocity-Verlet samples; a symplectic cross-check whose energy
// error stays bounded instead of drifting.
std::vector<PhasePoint> integrate_verlet(const OscillatorParams& params,
                                         const PhasePoint& initial,
                                         double t_end, std::size_t steps);
std::vector<PhasePoint> integrate_verlet(const HierarchyParams& params,
                                         const PhasePoint& initial,
                                         double t_end, std::size_t steps);

enum class EndpointComponent { t_a, y_a, t_b, y_b };

struct FdGradient {
    double value;
    double error_estimate;
};

// Central-difference derivative of the closed-form segment action with
// respect to one endpoint component, differentiated through a full re-solve
// of the boundary problem at each stencil point (seeded from the base
// solution). Step sizes {1e-4, 1e-5, 1e-6} of the natural scale with
// Richardson extrapolation; throws InvalidStencilError when the stencil
// straddles a branch change.
FdGradient fd_action_gradient(const OscillatorParams& params,
                              const BoundaryData& data,
                              const BranchSelector& branch,
                              EndpointComponent component, double tol = 1e-10);
FdGradient fd_action_gradient(const HierarchyParams& params,
                              const BoundaryData& data,
                              const BranchSelector& branch,
                              EndpointComponent component, double tol = 1e-10);

}  // namespace qo::oracle
