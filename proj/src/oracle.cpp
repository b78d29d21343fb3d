#include "qo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qo/action.hpp"
#include "qo/bvp.hpp"
#include "qo/hierarchy.hpp"
#include "qo/quadrature.hpp"

namespace qo::oracle {

namespace {

// Integer power by repeated multiplication; keeps the force evaluation
// independent of the pow/sgn route used by the closed-form side.
double ipow(double y, int p) {
    double out = 1.0;
    for (int i = 0; i < p; ++i) out *= y;
    return out;
}

struct Rhs {
    int n;
    double m;
    double k;

    double force(double y) const { return -k * ipow(y, 2 * n - 1); }
    double potential(double y) const { return k * ipow(y, 2 * n) / (2.0 * n); }
    std::array<double, 2> operator()(const std::array<double, 2>& s) const {
        return {s[1], force(s[0]) / m};
    }
};

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

using State = std::array<double, 2>;

State axpy(const State& base, double c, const State& v) {
    return {base[0] + c * v[0], base[1] + c * v[1]};
}

}  // namespace

std::array<double, 2> OdeSolution::eval_step(const DenseStep& s,
                                             double t) const {
    const double th = (t - s.t0) / s.h;
    const double th1 = 1.0 - th;
    std::array<double, 2> out;
    for (int i = 0; i < 2; ++i)
        out[i] = s.r1[i] +
                 th * (s.r2[i] +
                       th1 * (s.r3[i] + th * (s.r4[i] + th1 * s.r5[i])));
    return out;
}

const OdeSolution::DenseStep& OdeSolution::step_containing(double t) const {
    if (dense_.empty())
        throw DegenerateInputError("trajectory has zero time span");
    const bool forward = t_end_ >= t_start_;
    // Binary search for the last step starting at or before t.
    std::size_t lo = 0, hi = dense_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi + 1) / 2;
        const bool before =
            forward ? dense_[mid].t0 <= t : dense_[mid].t0 >= t;
        if (before)
            lo = mid;
        else
            hi = mid - 1;
    }
    return dense_[lo];
}

std::array<double, 2> OdeSolution::state_at(double t) const {
    const double span = t_end_ - t_start_;
    if (dense_.empty()) {
        if (std::fabs(t - t_start_) <= 1e-12 * (1.0 + std::fabs(t_start_)))
            return {samples_.front().y, samples_.front().v};
        throw DegenerateInputError("t lies outside the integration span");
    }
    const double slack = 1e-9 * (std::fabs(span) + 1.0);
    const double lo = std::min(t_start_, t_end_) - slack;
    const double hi = std::max(t_start_, t_end_) + slack;
    if (t < lo || t > hi)
        throw DegenerateInputError("t lies outside the integration span");
    return eval_step(step_containing(t), t);
}

PhasePoint OdeSolution::at(double t) const {
    const std::array<double, 2> s = state_at(t);
    return PhasePoint(t, s[0], s[1], m_);
}

double OdeSolution::potential(double y) const {
    return Rhs{n_, m_, k_}.potential(y);
}

double OdeSolution::energy_of(double y, double v) const {
    return 0.5 * m_ * v * v + potential(y);
}

OdeSolution integrate_impl(int n, double m, double k, const PhasePoint& initial,
                           double t_end, double tol) {
    check::finite(initial.t, "initial.t");
    check::finite(initial.y, "initial.y");
    check::finite(initial.v, "initial.v");
    check::finite(t_end, "t_end");
    if (!(tol > 0.0) || tol > 1e-2)
        throw DegenerateInputError("ode tol must lie in (0, 1e-2]");

    OdeSolution sol;
    sol.n_ = n;
    sol.m_ = m;
    sol.k_ = k;
    sol.t_start_ = initial.t;
    sol.t_end_ = t_end;
    sol.samples_.push_back(initial);

    if (t_end == initial.t) return sol;

    const Rhs rhs{n, m, k};
    const double dir = t_end > initial.t ? 1.0 : -1.0;
    // Looser user tolerances are tightened so the drift contract
    // (drift <= 10 * tol) holds with margin.
    const double rtol = std::max(tol / 20.0, 3e-15);
    const double atol =
        rtol * std::max({std::fabs(initial.y), std::fabs(initial.v), 1e-30});

    const double E0 = sol.energy_of(initial.y, initial.v);
    const double E_scale = std::max(std::fabs(E0), 1e-300);

    State y = {initial.y, initial.v};
    double t = initial.t;
    State k1 = rhs(y);
    sol.stats_.rhs_evaluations += 1;

    // Initial step size from the classic two-stage heuristic.
    double h;
    {
        auto scnorm = [&](const State& u, const State& ref) {
            double acc = 0.0;
            for (int i = 0; i < 2; ++i) {
                const double sc = atol + rtol * std::fabs(ref[i]);
                const double q = u[i] / sc;
                acc += q * q;
            }
            return std::sqrt(acc / 2.0);
        };
        const double d0 = scnorm(y, y);
        const double d1n = scnorm(k1, y);
        double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * (d0 / d1n);
        h0 = std::min(h0, std::fabs(t_end - t));
        const State y1 = axpy(y, dir * h0, k1);
        const State k2 = rhs(y1);
        sol.stats_.rhs_evaluations += 1;
        const State dk = {k2[0] - k1[0], k2[1] - k1[1]};
        const double d2 = scnorm(dk, y) / h0;
        double h1;
        if (std::max(d1n, d2) <= 1e-15)
            h1 = std::max(1e-6, h0 * 1e-3);
        else
            h1 = std::pow(0.01 / std::max(d1n, d2), 0.2);
        h = std::min({100.0 * h0, h1, std::fabs(t_end - t)});
    }

    const std::size_t max_steps = 20'000'000;
    bool last = false;
    double facmax = 5.0;
    for (std::size_t step = 0; step < max_steps; ++step) {
        if (h < 1e-14 * std::max(1.0, std::fabs(t)))
            throw NonConvergenceError(
                "ode step size underflow (stiff or non-finite dynamics)",
                {0.0, 0.0, 0.0});
        if ((t + dir * h - t_end) * dir >= 0.0) {
            h = std::fabs(t_end - t);
            last = true;
        }
        const double hs = dir * h;

        const State k2 = rhs(axpy(y, hs * a21, k1));
        State u = y;
        u = axpy(u, hs * a31, k1);
        u = axpy(u, hs * a32, k2);
        const State k3 = rhs(u);
        u = y;
        u = axpy(u, hs * a41, k1);
        u = axpy(u, hs * a42, k2);
        u = axpy(u, hs * a43, k3);
        const State k4 = rhs(u);
        u = y;
        u = axpy(u, hs * a51, k1);
        u = axpy(u, hs * a52, k2);
        u = axpy(u, hs * a53, k3);
        u = axpy(u, hs * a54, k4);
        const State k5 = rhs(u);
        u = y;
        u = axpy(u, hs * a61, k1);
        u = axpy(u, hs * a62, k2);
        u = axpy(u, hs * a63, k3);
        u = axpy(u, hs * a64, k4);
        u = axpy(u, hs * a65, k5);
        const State k6 = rhs(u);
        State ynew = y;
        ynew = axpy(ynew, hs * a71, k1);
        ynew = axpy(ynew, hs * a73, k3);
        ynew = axpy(ynew, hs * a74, k4);
        ynew = axpy(ynew, hs * a75, k5);
        ynew = axpy(ynew, hs * a76, k6);
        const State k7 = rhs(ynew);
        sol.stats_.rhs_evaluations += 6;

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                    e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc =
                atol + rtol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / 2.0);
        if (!std::isfinite(err))
            throw NonConvergenceError("ode produced a non-finite state",
                                      {0.0, 0.0, 0.0});

        if (err <= 1.0) {
            OdeSolution::DenseStep ds;
            ds.t0 = t;
            ds.h = hs;
            for (int i = 0; i < 2; ++i) {
                const double ydiff = ynew[i] - y[i];
                const double bspl = hs * k1[i] - ydiff;
                ds.r1[i] = y[i];
                ds.r2[i] = ydiff;
                ds.r3[i] = bspl;
                ds.r4[i] = ydiff - hs * k7[i] - bspl;
                ds.r5[i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                                 d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            sol.dense_.push_back(ds);
            t = last ? t_end : t + hs;
            y = ynew;
            k1 = k7;  // first-same-as-last
            sol.stats_.accepted += 1;
            const double drift =
                std::fabs(sol.energy_of(y[0], y[1]) - E0) / E_scale;
            if (drift > sol.stats_.max_energy_drift)
                sol.stats_.max_energy_drift = drift;
            sol.samples_.emplace_back(t, y[0], y[1], m);
            if (last) break;
            const double fac =
                std::clamp(0.9 * std::pow(err, -0.2), 0.2, facmax);
            h = std::min(h * fac, std::fabs(t_end - t) + h);
            facmax = 5.0;
        } else {
            sol.stats_.rejected += 1;
            const double fac =
                std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            h *= fac;
            facmax = 1.0;
            last = false;
        }
        if (step + 1 == max_steps)
            throw NonConvergenceError("ode step budget exhausted",
                                      {0.0, 0.0, 0.0});
    }
    return sol;
}

OdeSolution integrate_newton(const OscillatorParams& params,
                             const PhasePoint& initial, double t_end,
                             double tol) {
    return integrate_impl(2, params.m, params.k4, initial, t_end, tol);
}

OdeSolution integrate_newton(const HierarchyParams& params,
                             const PhasePoint& initial, double t_end,
                             double tol) {
    return integrate_impl(params.n, params.m, params.k2n, initial, t_end, tol);
}

double segment_quadrature(const OdeSolution& sol, double t_a, double t_b,
                          bool lagrangian) {
    check::finite(t_a, "t_a");
    check::finite(t_b, "t_b");
    if (t_a == t_b) return 0.0;
    if (!(t_b > t_a))
        throw DegenerateInputError("quadrature requires t_b >= t_a");
    const double lo = std::min(sol.t_start(), sol.t_end());
    const double hi = std::max(sol.t_start(), sol.t_end());
    const double slack = 1e-9 * (hi - lo + 1.0);
    if (t_a < lo - slack || t_b > hi + slack)
        throw DegenerateInputError("quadrature window outside trajectory span");

    const double m = sol.mass();
    double total = 0.0;
    // Integrate each dense step's polynomial separately: smooth pieces, no
    // interpolation seams inside a panel.
    for (const OdeSolution::DenseStep& s : sol.dense_) {
        const double s_lo = std::min(s.t0, s.t0 + s.h);
        const double s_hi = std::max(s.t0, s.t0 + s.h);
        const double u = std::max(t_a, s_lo);
        const double v = std::min(t_b, s_hi);
        if (!(v > u)) continue;
        auto f = [&](double t) {
            const std::array<double, 2> st = sol.eval_step(s, t);
            const double kin = 0.5 * m * st[1] * st[1];
            return lagrangian ? kin - sol.potential(st[0]) : 2.0 * kin;
        };
        total += quad::integrate(f, u, v, 1e-13, 1e-15 * (v - u));
    }
    return total;
}

double lagrangian_action_quadrature(const OdeSolution& sol, double t_a,
                                    double t_b) {
    return segment_quadrature(sol, t_a, t_b, true);
}

double momentum_quadrature(const OdeSolution& sol, double t_a, double t_b) {
    return segment_quadrature(sol, t_a, t_b, false);
}

namespace {

std::vector<PhasePoint> verlet_impl(int n, double m, double k,
                                    const PhasePoint& initial, double t_end,
                                    std::size_t steps) {
    check::finite(initial.y, "initial.y");
    check::finite(initial.v, "initial.v");
    check::finite(t_end, "t_end");
    if (steps == 0) throw DegenerateInputError("verlet requires steps >= 1");
    const Rhs rhs{n, m, k};
    const double dt = (t_end - initial.t) / static_cast<double>(steps);
    std::vector<PhasePoint> out;
    out.reserve(steps + 1);
    out.push_back(initial);
    double y = initial.y, v = initial.v;
    double a = rhs.force(y) / m;
    for (std::size_t i = 1; i <= steps; ++i) {
        y += v * dt + 0.5 * a * dt * dt;
        const double a_new = rhs.force(y) / m;
        v += 0.5 * (a + a_new) * dt;
        a = a_new;
        out.emplace_back(initial.t + dt * static_cast<double>(i), y, v, m);
    }
    return out;
}

// Shared finite-difference driver. solve_action returns the pair
// (action total, solution energy) for perturbed boundary data, re-solved
// from a seed near the base solution.
FdGradient fd_core(const BoundaryData& data, EndpointComponent component,
                   double base_E, double length_scale,
                   const std::function<std::array<double, 2>(
                       const BoundaryData&)>& solve_action) {
    const double dt = data.b.t - data.a.t;
    const double scale =
        (component == EndpointComponent::t_a ||
         component == EndpointComponent::t_b)
            ? dt
            : length_scale;

    auto perturbed = [&](double h) {
        double ta = data.a.t, ya = data.a.y, tb = data.b.t, yb = data.b.y;
        switch (component) {
            case EndpointComponent::t_a: ta += h; break;
            case EndpointComponent::y_a: ya += h; break;
            case EndpointComponent::t_b: tb += h; break;
            case EndpointComponent::y_b: yb += h; break;
        }
        return BoundaryData(SpacetimePoint(ta, ya), SpacetimePoint(tb, yb));
    };

    auto central = [&](double h) {
        std::array<double, 2> plus, minus;
        try {
            plus = solve_action(perturbed(+h));
            minus = solve_action(perturbed(-h));
        } catch (const NoSolutionError& e) {
            throw InvalidStencilError(
                std::string("stencil point left the feasible branch: ") +
                e.what());
        }
        for (const double E : {plus[1], minus[1]}) {
            if (std::fabs(std::log(E / base_E)) > std::log(1.25))
                throw InvalidStencilError(
                    "stencil point jumped to a different solution branch");
        }
        return (plus[0] - minus[0]) / (2.0 * h);
    };

    const double h1 = 1e-4 * scale;
    const double d1v = central(h1);
    const double d2v = central(h1 / 10.0);
    const double d3v = central(h1 / 100.0);
    // Second-order stencils, step ratio 10: Richardson removes the h^2 term.
    const double r12 = (100.0 * d2v - d1v) / 99.0;
    const double r23 = (100.0 * d3v - d2v) / 99.0;
    return FdGradient{r12, std::fabs(r12 - r23)};
}

}  // namespace

std::vector<PhasePoint> integrate_verlet(const OscillatorParams& params,
                                         const PhasePoint& initial,
                                         double t_end, std::size_t steps) {
    return verlet_impl(2, params.m, params.k4, initial, t_end, steps);
}

std::vector<PhasePoint> integrate_verlet(const HierarchyParams& params,
                                         const PhasePoint& initial,
                                         double t_end, std::size_t steps) {
    return verlet_impl(params.n, params.m, params.k2n, initial, t_end, steps);
}

FdGradient fd_action_gradient(const OscillatorParams& params,
                              const BoundaryData& data,
                              const BranchSelector& branch,
                              EndpointComponent component, double tol) {
    const bvp::BvpSolution base = bvp::solve(params, data, branch, tol);
    auto solve_action =
        [&](const BoundaryData& d) -> std::array<double, 2> {
        const bvp::BvpSolution s = bvp::solve_seeded(params, d, branch, base, tol);
        return {action::evaluate(s).total, s.chart.E};
    };
    return fd_core(data, component, base.chart.E, amplitude(base.chart),
                   solve_action);
}

FdGradient fd_action_gradient(const HierarchyParams& params,
                              const BoundaryData& data,
                              const BranchSelector& branch,
                              EndpointComponent component, double tol) {
    const hierarchy::HierarchySolution base =
        hierarchy::h_solve(params, data, branch, tol);
    auto solve_action =
        [&](const BoundaryData& d) -> std::array<double, 2> {
        const hierarchy::HierarchySolution s =
            hierarchy::h_solve_seeded(params, d, branch, base, tol);
        return {hierarchy::h_action_of(s).total, s.chart.E};
    };
    return fd_core(data, component, base.chart.E,
                   hierarchy::h_amplitude(base.chart), solve_action);
}

}  // namespace qo::oracle
