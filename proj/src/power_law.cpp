#include "qo/detail/power_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qo/quadrature.hpp"

namespace qo::detail {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// sin and cos of phi evaluated per half-period cell: phi is split as
// k*pi + r with k the nearest integer, so angles constructed as exact
// multiples of pi (the double) map to exact zeros of sin. This keeps
// positions at constructed crossings identically zero instead of
// A * |eps|^{1/n}, which for n >= 2 would amplify rounding of sin(k*pi)
// to ~1e-8 relative error.
struct CellTrig {
    double s;
    double c;
};

inline CellTrig cell_trig(double phi) {
    const double kd = std::nearbyint(phi / kPi);
    const double r = phi - kd * kPi;
    const bool odd = std::fmod(kd, 2.0) != 0.0;
    const double sr = std::sin(r);
    const double cr = std::cos(r);
    return odd ? CellTrig{-sr, -cr} : CellTrig{sr, cr};
}

// Classic bracketing root refinement (bisection / secant / inverse
// quadratic hybrid). fa and fb must have opposite signs.
template <class F>
double brent(F&& f, double a, double b, double fa, double fb, double xtol,
             double ftol) {
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 100; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * 1e-16 * std::fabs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0 || std::fabs(fb) <= ftol)
            return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p <
                std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

}  // namespace

PowerLawModel::PowerLawModel(int n, double mass, double stiffness)
    : n_(n), m_(mass), k_(stiffness) {
    if (n_ < 1) throw DegenerateInputError("power index n must be >= 1");
    check::finite_positive(m_, "m");
    check::finite_positive(k_, "k");
    quarter_ = quarter_partial(kHalfPi);
}

double PowerLawModel::amplitude(double E) const {
    return std::pow(2.0 * n_ * E / k_, 1.0 / (2.0 * n_));
}

double PowerLawModel::position(double E, double phi) const {
    const CellTrig ct = cell_trig(phi);
    return amplitude(E) * sgn(ct.s) * std::pow(std::fabs(ct.s), 1.0 / n_);
}

double PowerLawModel::velocity(double E, double phi) const {
    return std::sqrt(2.0 * E / m_) * cell_trig(phi).c;
}

double PowerLawModel::signed_power(double y) const {
    return sgn(y) * std::pow(std::fabs(y), static_cast<double>(n_));
}

double PowerLawModel::min_energy(double y) const {
    return k_ * std::pow(std::fabs(y), 2.0 * n_) / (2.0 * n_);
}

double PowerLawModel::time_prefactor(double E) const {
    return amplitude(E) / (n_ * std::sqrt(2.0 * E / m_));
}

double PowerLawModel::period(double E) const {
    return 4.0 * time_prefactor(E) * quarter_;
}

// Substituted time kernel: with x = u^n the quarter integral of
// |sin x|^{1/n - 1} dx becomes the integral of n * (sin(x)/x)^{1/n - 1} du,
// smooth on [0, (pi/2)^{1/n}].
double PowerLawModel::kernel(double u) const {
    const double x = std::pow(u, static_cast<double>(n_));
    const double sigma = x == 0.0 ? 1.0 : std::sin(x) / x;
    return n_ * std::pow(sigma, (1.0 - n_) / n_);
}

double PowerLawModel::quarter_partial(double s) const {
    if (s <= 0.0) return 0.0;
    if (s > kHalfPi) s = kHalfPi;
    const double u_hi = std::pow(s, 1.0 / n_);
    return quad::integrate([this](double u) { return kernel(u); }, 0.0, u_hi,
                           5e-14, 1e-16 * (1.0 + n_ * u_hi));
}

double PowerLawModel::invert_quarter_partial(double target) const {
    if (target <= 0.0) return 0.0;
    if (target >= quarter_) return kHalfPi;
    const double u_max = std::pow(kHalfPi, 1.0 / n_);
    double lo = 0.0, hi = u_max;
    double u = u_max * target / quarter_;
    for (int iter = 0; iter < 60; ++iter) {
        const double f = quad::integrate([this](double x) { return kernel(x); },
                                         0.0, u, 5e-14, 1e-17) -
                         target;
        if (f > 0.0)
            hi = u;
        else
            lo = u;
        const double step = f / kernel(u);
        double next = u - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - u) <= 1e-16 * u_max) {
            u = next;
            break;
        }
        u = next;
    }
    return std::pow(u, static_cast<double>(n_));
}

double PowerLawModel::angular_primitive(double phi) const {
    if (phi < 0.0) return -angular_primitive(-phi);
    const double qd = std::floor(phi / kHalfPi);
    double r = phi - qd * kHalfPi;
    if (r < 0.0) r = 0.0;
    if (r > kHalfPi) r = kHalfPi;
    const bool odd = std::fmod(qd, 2.0) != 0.0;
    const double partial =
        odd ? quarter_ - quarter_partial(kHalfPi - r) : quarter_partial(r);
    return qd * quarter_ + partial;
}

double PowerLawModel::invert_angular(double target) const {
    if (target < 0.0) return -invert_angular(-target);
    const double qd = std::floor(target / quarter_);
    double rp = target - qd * quarter_;
    if (rp < 0.0) rp = 0.0;
    if (rp > quarter_) rp = quarter_;
    const bool odd = std::fmod(qd, 2.0) != 0.0;
    const double r = odd ? kHalfPi - invert_quarter_partial(quarter_ - rp)
                         : invert_quarter_partial(rp);
    return qd * kHalfPi + r;
}

double PowerLawModel::time_between(double E, double phi_lo,
                                   double phi_hi) const {
    return time_prefactor(E) *
           (angular_primitive(phi_hi) - angular_primitive(phi_lo));
}

double PowerLawModel::phi_after(double E, double phi_from,
                                double elapsed) const {
    const double target = angular_primitive(phi_from) + elapsed / time_prefactor(E);
    return invert_angular(target);
}

double PowerLawModel::energy_from_separation(double w_a, double w_b,
                                             double dtheta) const {
    const double s = std::sin(dtheta);
    if (s == 0.0) return kInf;
    const double half = std::sin(0.5 * dtheta);
    // Law-of-cosines form: nonnegative for every input triple.
    const double num = (w_b - w_a) * (w_b - w_a) + 4.0 * w_a * w_b * half * half;
    return k_ * (num / (s * s)) / (2.0 * n_);
}

int count_crossings(double phi_a, double phi_b) {
    if (!(phi_b > phi_a)) return 0;
    const long long k_lo = static_cast<long long>(std::floor(phi_a / kPi)) - 1;
    const long long k_hi = static_cast<long long>(std::floor(phi_b / kPi)) + 1;
    int count = 0;
    for (long long k = k_lo; k <= k_hi; ++k) {
        const double x = static_cast<double>(k) * kPi;
        if (phi_a < x && x < phi_b) ++count;
    }
    return count;
}

namespace {

struct Candidate {
    double E;
    double phi_a;
    double phi_b;
};

std::array<double, 3> honest_residuals(const PowerLawModel& model,
                                       const BoundaryData& data,
                                       const Candidate& c) {
    const double dt = data.b.t - data.a.t;
    const double A = model.amplitude(c.E);
    return {(model.position(c.E, c.phi_a) - data.a.y) / A,
            (model.position(c.E, c.phi_b) - data.b.y) / A,
            (model.time_between(c.E, c.phi_a, c.phi_b) - dt) / dt};
}

double norm_inf(const std::array<double, 3>& r) {
    return std::max({std::fabs(r[0]), std::fabs(r[1]), std::fabs(r[2])});
}

// Damped Newton on (E, phi_a) with phi_b marched forward by the exact
// elapsed time; the residuals are both endpoint positions scaled by the
// amplitude. Returns the best point seen, with honest residuals.
PowerLawRoot newton_polish(const PowerLawModel& model, const BoundaryData& data,
                           double E0, double phi_a0,
                           const SolveControls& controls) {
    const double dt = data.b.t - data.a.t;

    auto eval = [&](double E, double phi_a) -> std::array<double, 3> {
        const double A = model.amplitude(E);
        const double phi_b = model.phi_after(E, phi_a, dt);
        return {(model.position(E, phi_a) - data.a.y) / A,
                (model.position(E, phi_b) - data.b.y) / A, phi_b};
    };

    double E = E0, phi_a = phi_a0;
    auto cur = eval(E, phi_a);
    double cur_norm = std::max(std::fabs(cur[0]), std::fabs(cur[1]));
    double best_E = E, best_pa = phi_a, best_pb = cur[2], best_norm = cur_norm;

    for (int iter = 0; iter < controls.max_newton; ++iter) {
        if (cur_norm <= 0.2 * controls.tol) break;
        const double dE = std::max(E * 1e-7, 1e-300);
        const double dphi = 1e-7;
        const auto fE = eval(E + dE, phi_a);
        const auto fp = eval(E, phi_a + dphi);
        const double j11 = (fE[0] - cur[0]) / dE;
        const double j21 = (fE[1] - cur[1]) / dE;
        const double j12 = (fp[0] - cur[0]) / dphi;
        const double j22 = (fp[1] - cur[1]) / dphi;
        const double det = j11 * j22 - j12 * j21;
        if (!std::isfinite(det) || std::fabs(det) < 1e-300) break;
        double step_E = -(j22 * cur[0] - j12 * cur[1]) / det;
        double step_p = -(-j21 * cur[0] + j11 * cur[1]) / det;
        if (step_E > 3.0 * E) step_E = 3.0 * E;
        if (step_E < -0.75 * E) step_E = -0.75 * E;
        step_p = std::clamp(step_p, -0.5, 0.5);

        bool improved = false;
        for (double lambda = 1.0; lambda >= 1.0 / 256.0; lambda *= 0.5) {
            const double En = E + lambda * step_E;
            const double pan = phi_a + lambda * step_p;
            if (!(En > 0.0) || !std::isfinite(En)) continue;
            const auto trial = eval(En, pan);
            const double tn = std::max(std::fabs(trial[0]), std::fabs(trial[1]));
            if (tn < cur_norm) {
                E = En;
                phi_a = pan;
                cur = trial;
                cur_norm = tn;
                if (tn < best_norm) {
                    best_norm = tn;
                    best_E = E;
                    best_pa = phi_a;
                    best_pb = cur[2];
                }
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }

    Candidate best{best_E, best_pa, best_pb};
    PowerLawRoot root{best.E, best.phi_a, best.phi_b,
                      honest_residuals(model, data, best)};
    return root;
}

bool validate_root(const PowerLawModel& model, const BoundaryData& data,
                   const BranchSelector& branch, const PowerLawRoot& root,
                   double tol) {
    if (norm_inf(root.residuals) > tol) return false;
    if (count_crossings(root.phi_a, root.phi_b) != branch.crossings)
        return false;
    const double A = model.amplitude(root.E);
    const bool at_turning = (A - std::fabs(data.a.y)) <= 1e-9 * A;
    if (!at_turning) {
        const bool rising = cell_trig(root.phi_a).c > 0.0;
        if (rising != branch.rising_at_a) return false;
    }
    return true;
}

struct ScanState {
    std::vector<PowerLawRoot> roots;
    bool residual_failure = false;
    std::array<double, 3> best_failed{kInf, kInf, kInf};
};

void accept_candidate(const PowerLawModel& model, const BoundaryData& data,
                      const BranchSelector& branch,
                      const SolveControls& controls, const Candidate& cand,
                      ScanState& state) {
    // Fast path: keep the construction when it already meets tolerance.
    PowerLawRoot direct{cand.E, cand.phi_a, cand.phi_b,
                        honest_residuals(model, data, cand)};
    PowerLawRoot chosen = direct;
    if (norm_inf(direct.residuals) > 0.5 * controls.tol) {
        PowerLawRoot polished =
            newton_polish(model, data, cand.E, cand.phi_a, controls);
        if (norm_inf(polished.residuals) < norm_inf(direct.residuals))
            chosen = polished;
    }
    if (validate_root(model, data, branch, chosen, controls.tol)) {
        state.roots.push_back(chosen);
    } else if (norm_inf(chosen.residuals) > controls.tol) {
        state.residual_failure = true;
        if (norm_inf(chosen.residuals) < norm_inf(state.best_failed))
            state.best_failed = chosen.residuals;
    }
}

// Both endpoints at zero crossings: the angular separation is forced to a
// whole number of half-periods and the energy follows in closed form from
// the period scaling T ~ E^{(1-n)/(2n)}.
void solve_zero_to_zero(const PowerLawModel& model, const BoundaryData& data,
                        const BranchSelector& branch,
                        const SolveControls& controls, ScanState& state) {
    const double dt = data.b.t - data.a.t;
    const double phi_a = branch.rising_at_a ? 0.0 : kPi;
    const double dtheta = (branch.crossings + 1) * kPi;
    const double tau_ref =
        model.time_prefactor(1.0) * 2.0 * (branch.crossings + 1) *
        model.quarter_angular();
    if (model.n() == 1) {
        // Harmonic case: the elapsed time fixes the separation but not the
        // energy, so a matching dt admits a whole one-parameter family.
        if (std::fabs(tau_ref - dt) <= 1e-9 * dt)
            throw DegenerateSeparationError(
                "zero-to-zero harmonic endpoints a whole number of "
                "half-periods apart: energy is indeterminate");
        return;
    }
    const double E =
        std::pow(dt / tau_ref, 2.0 * model.n() / (1.0 - model.n()));
    if (!std::isfinite(E) || E <= 0.0) return;
    accept_candidate(model, data, branch, controls,
                     Candidate{E, phi_a, phi_a + dtheta}, state);
}

// Endpoint b at a zero crossing, endpoint a away from it: the final angle is
// pinned to a multiple of pi, so scan in energy.
void solve_to_zero(const PowerLawModel& model, const BoundaryData& data,
                   const BranchSelector& branch, const SolveControls& controls,
                   ScanState& state) {
    const double dt = data.b.t - data.a.t;
    const double w_a = model.signed_power(data.a.y);
    const double E_min = model.min_energy(data.a.y);

    auto build = [&](double E) -> Candidate {
        const double anorm = std::sqrt(2.0 * model.n() * E / model.stiffness());
        const double what = std::clamp(w_a / anorm, -1.0, 1.0);
        const double phi_a =
            branch.rising_at_a ? std::asin(what) : kPi - std::asin(what);
        const long long k_target =
            static_cast<long long>(std::floor(phi_a / kPi)) + 1 +
            branch.crossings;
        return Candidate{E, phi_a, static_cast<double>(k_target) * kPi};
    };
    auto gap = [&](double E) {
        const Candidate c = build(E);
        return model.time_between(E, c.phi_a, c.phi_b) - dt;
    };

    double E_hi = std::max(E_min * 4.0, 1e-12);
    for (int iter = 0; iter < 120; ++iter) {
        if (gap(E_hi) < 0.0 || E_hi > E_min * 1e14 || E_hi > 1e280) break;
        E_hi *= 8.0;
    }

    const int n_pts = std::max(64, controls.scan_points / 2);
    std::vector<double> es;
    es.reserve(n_pts);
    const double span = E_hi - E_min;
    for (int i = 0; i < n_pts; ++i) {
        const double x = -14.0 * (1.0 - static_cast<double>(i) / (n_pts - 1));
        es.push_back(E_min + span * std::pow(10.0, x));
    }

    double prev_E = 0.0, prev_g = 0.0;
    bool have_prev = false;
    for (double E : es) {
        const double g = gap(E);
        if (!std::isfinite(g)) {
            have_prev = false;
            continue;
        }
        if (have_prev && (g == 0.0 || (prev_g < 0.0) != (g < 0.0))) {
            const double root_E =
                brent(gap, prev_E, E, prev_g, g, 1e-13 * E, 1e-13 * dt);
            accept_candidate(model, data, branch, controls, build(root_E),
                             state);
        }
        prev_E = E;
        prev_g = g;
        have_prev = true;
    }
}

// Generic endpoints: scan the angular separation. The energy at each trial
// separation comes from the endpoint identity, the start angle from the
// branch's velocity sign, and the gap function is elapsed time minus dt.
void solve_generic(const PowerLawModel& model, const BoundaryData& data,
                   const BranchSelector& branch, const SolveControls& controls,
                   ScanState& state) {
    const double dt = data.b.t - data.a.t;
    const double w_a = model.signed_power(data.a.y);
    const double w_b = model.signed_power(data.b.y);
    const int c = branch.crossings;

    const double lo = c == 0 ? 1e-13 : (c - 1) * kPi + 1e-13;
    const double hi = (c + 1) * kPi - 1e-13;
    if (!(lo < hi)) return;

    std::vector<double> grid;
    grid.reserve(controls.scan_points + 4 * controls.cluster_points);
    for (int i = 0; i < controls.scan_points; ++i)
        grid.push_back(lo + (hi - lo) * i / (controls.scan_points - 1.0));
    // Cluster extra points toward every half-period multiple in the window:
    // the gap function dives steeply there and roots accumulate nearby.
    for (int k = std::max(0, c - 1); k <= c + 1; ++k) {
        const double center = k * kPi;
        for (int j = 0; j < controls.cluster_points / 2; ++j) {
            const double d = kPi * std::pow(10.0, -1.2 - 0.45 * j);
            for (const double x : {center - d, center + d})
                if (x > lo && x < hi) grid.push_back(x);
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    auto build = [&](double dtheta) -> Candidate {
        const double E = model.energy_from_separation(w_a, w_b, dtheta);
        const double anorm = std::sqrt(2.0 * model.n() * E / model.stiffness());
        const double what = std::clamp(w_a / anorm, -1.0, 1.0);
        const double phi_a =
            branch.rising_at_a ? std::asin(what) : kPi - std::asin(what);
        return Candidate{E, phi_a, phi_a + dtheta};
    };
    auto gap = [&](double dtheta) {
        const Candidate cand = build(dtheta);
        if (!std::isfinite(cand.E) || cand.E <= 0.0) return kInf;
        return model.time_between(cand.E, cand.phi_a, cand.phi_b) - dt;
    };
    auto feasible = [&](const Candidate& cand) {
        if (!std::isfinite(cand.E) || cand.E <= 0.0) return false;
        const double anorm = std::sqrt(2.0 * model.n() * cand.E / model.stiffness());
        const double r_direct =
            std::fabs(std::sin(cand.phi_b) * anorm - w_b);
        // Opposite-velocity start angle with the same sin; exactly one of the
        // two pairings is consistent with the trial separation.
        const double mirror = kPi - cand.phi_a;
        const double r_mirror = std::fabs(
            std::sin(mirror + (cand.phi_b - cand.phi_a)) * anorm - w_b);
        if (r_direct > r_mirror + 1e-12 * (anorm + std::fabs(w_b)) &&
            r_direct > 1e-7 * anorm)
            return false;
        return count_crossings(cand.phi_a, cand.phi_b) == c;
    };

    double prev_x = 0.0, prev_g = 0.0;
    bool have_prev = false;
    for (const double x : grid) {
        const Candidate cand = build(x);
        const bool ok = feasible(cand);
        const double g = ok ? model.time_between(cand.E, cand.phi_a, cand.phi_b) - dt
                            : kInf;
        if (!ok || !std::isfinite(g)) {
            have_prev = false;
            continue;
        }
        if (have_prev && (g == 0.0 || (prev_g < 0.0) != (g < 0.0))) {
            const double root_x =
                brent(gap, prev_x, x, prev_g, g, 1e-14 * kPi, 1e-13 * dt);
            accept_candidate(model, data, branch, controls, build(root_x),
                             state);
        }
        prev_x = x;
        prev_g = g;
        have_prev = true;
    }
}

void dedup_and_sort(std::vector<PowerLawRoot>& roots) {
    std::sort(roots.begin(), roots.end(),
              [](const PowerLawRoot& a, const PowerLawRoot& b) {
                  return a.E < b.E;
              });
    std::vector<PowerLawRoot> unique;
    for (const PowerLawRoot& r : roots) {
        const bool dup =
            !unique.empty() &&
            std::fabs(r.E - unique.back().E) <=
                1e-7 * std::max(r.E, unique.back().E) &&
            std::fabs(r.phi_a - unique.back().phi_a) <= 1e-6;
        if (!dup) unique.push_back(r);
    }
    roots = std::move(unique);
}

}  // namespace

std::vector<PowerLawRoot> solve_all_roots(const PowerLawModel& model,
                                          const BoundaryData& data,
                                          const BranchSelector& branch,
                                          const SolveControls& controls) {
    if (!(controls.tol > 0.0))
        throw DegenerateInputError("solver tolerance must be > 0");

    const double ya = data.a.y, yb = data.b.y;
    ScanState state;

    if (ya != 0.0 && yb != 0.0) {
        // Cell parity: crossings and the velocity sign at a fix the sign of
        // y in the cell that contains b.
        const int j = branch.rising_at_a ? (ya > 0.0 ? 0 : -1)
                                         : (ya > 0.0 ? 0 : 1);
        const int parity = (((j + branch.crossings) % 2) + 2) % 2;
        const bool sign_ok = parity == 0 ? yb > 0.0 : yb < 0.0;
        if (!sign_ok) return {};
    }

    if (ya == 0.0 && yb == 0.0)
        solve_zero_to_zero(model, data, branch, controls, state);
    else if (yb == 0.0)
        solve_to_zero(model, data, branch, controls, state);
    else
        solve_generic(model, data, branch, controls, state);

    dedup_and_sort(state.roots);
    if (state.roots.empty() && state.residual_failure)
        throw NonConvergenceError(
            "bracketed candidate failed to polish below tolerance",
            state.best_failed);
    return state.roots;
}

PowerLawRoot solve_min_energy(const PowerLawModel& model,
                              const BoundaryData& data,
                              const BranchSelector& branch,
                              const SolveControls& controls) {
    std::vector<PowerLawRoot> roots =
        solve_all_roots(model, data, branch, controls);
    if (roots.empty())
        throw NoSolutionError(
            "no extremal joins the endpoints on the requested branch "
            "(crossings=" +
            std::to_string(branch.crossings) +
            ", rising_at_a=" + (branch.rising_at_a ? std::string("true")
                                                   : std::string("false")) +
            ")");
    return roots.front();
}

PowerLawRoot solve_from_guess(const PowerLawModel& model,
                              const BoundaryData& data,
                              const BranchSelector& branch, double energy_guess,
                              double phi_a_guess,
                              const SolveControls& controls) {
    if (std::isfinite(energy_guess) && energy_guess > 0.0) {
        PowerLawRoot polished =
            newton_polish(model, data, energy_guess, phi_a_guess, controls);
        if (validate_root(model, data, branch, polished, controls.tol))
            return polished;
    }
    // Guess did not converge to the requested branch: fall back to the full
    // scan and keep the root nearest the guess energy.
    std::vector<PowerLawRoot> roots =
        solve_all_roots(model, data, branch, controls);
    if (roots.empty())
        throw NoSolutionError(
            "no extremal joins the endpoints on the requested branch");
    if (!(energy_guess > 0.0)) return roots.front();
    const PowerLawRoot* best = &roots.front();
    double best_gap = kInf;
    for (const PowerLawRoot& r : roots) {
        const double gap = std::fabs(std::log(r.E / energy_guess));
        if (gap < best_gap) {
            best_gap = gap;
            best = &r;
        }
    }
    return *best;
}

}  // namespace qo::detail
