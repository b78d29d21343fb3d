#include "qo/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qo/action.hpp"
#include "qo/bvp.hpp"
#include "qo/detail/parallel.hpp"
#include "qo/detail/power_law.hpp"
#include "qo/errors.hpp"
#include "qo/extremal.hpp"
#include "qo/hierarchy.hpp"
#include "qo/oracle.hpp"

namespace qo::verify {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Every case draws from its own stream, so the report does not depend on
// thread scheduling or on which suites ran before it.
std::uint64_t case_seed(std::uint64_t seed, std::string_view suite, int index) {
    return splitmix(seed ^ splitmix(fnv1a(suite) + static_cast<std::uint64_t>(index)));
}

int scaled_count(const Options& opts, int base) {
    const double scaled = static_cast<double>(base) * opts.cases / 50.0;
    return std::max(1, static_cast<int>(std::llround(scaled)));
}

double pick_tol(const Options& opts, double fallback) {
    return opts.tol_override > 0.0 ? opts.tol_override : fallback;
}

double grid_distance(double x, double cell) {
    return std::fabs(std::remainder(x, cell));
}

struct CaseOutcome {
    double worst = 0.0;
    std::string note;
};

template <class Fn>
PropertyResult run_suite(const Options& opts, std::string name, int count,
                         double tol, Fn&& per_case) {
    PropertyResult result;
    result.name = std::move(name);
    result.cases = count;
    result.tolerance = tol;
    const auto start = std::chrono::steady_clock::now();
    std::vector<CaseOutcome> outcomes(static_cast<std::size_t>(count));
    detail::parallel_for(count, detail::thread_budget(opts.threads), [&](int i) {
        Rng rng(case_seed(opts.seed, result.name, i));
        auto& slot = outcomes[static_cast<std::size_t>(i)];
        try {
            slot = per_case(i, rng);
        } catch (const std::exception& e) {
            slot = {kInf, e.what()};
        }
    });
    std::size_t worst_index = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i) {
        if (outcomes[i].worst > outcomes[worst_index].worst) worst_index = i;
    }
    result.worst = outcomes[worst_index].worst;
    result.detail = "case " + std::to_string(worst_index);
    if (!outcomes[worst_index].note.empty())
        result.detail += ": " + outcomes[worst_index].note;
    result.passed = result.worst <= tol;
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

template <class Err, class Fn>
bool throws_exactly(Fn&& fn) {
    try {
        fn();
    } catch (const Err&) {
        return true;
    } catch (...) {
        return false;
    }
    return false;
}

}  // namespace

double Rng::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

int Rng::uniform_int(int lo, int hi) {
    const int span = hi - lo + 1;
    const int v = lo + static_cast<int>(uniform(0.0, 1.0) * span);
    return std::min(v, hi);
}

Segment random_segment(Rng& rng, double margin) {
    const double m = rng.log_uniform(0.4, 2.5);
    const double k4 = rng.log_uniform(0.3, 4.0);
    const double E = rng.log_uniform(0.1, 10.0);
    const double theta0 = rng.uniform(0.0, 2.0 * kPi);
    const double t0 = rng.uniform(-1.0, 1.0);

    double phi_a = 0.6;
    double dphi = 1.1;
    for (int attempt = 0; attempt < 256; ++attempt) {
        phi_a = rng.uniform(0.0, 2.0 * kPi);
        dphi = rng.uniform(0.1, 2.0 * kPi - 0.1);
        if (grid_distance(phi_a, kPi / 2) < margin) continue;
        if (grid_distance(phi_a + dphi, kPi / 2) < margin) continue;
        if (grid_distance(dphi, kPi) < margin) continue;
        break;
    }

    Segment seg;
    seg.params = OscillatorParams(m, k4);
    seg.chart = ExtremalChart(seg.params, E, theta0, t0);
    seg.theta_a = theta0 + phi_a;
    seg.theta_b = theta0 + phi_a + dphi;

    const detail::PowerLawModel model(2, m, k4);
    const double t_a = t0 + model.time_between(E, 0.0, phi_a);
    const double t_b = t_a + model.time_between(E, phi_a, phi_a + dphi);
    seg.data = BoundaryData(SpacetimePoint(t_a, model.position(E, phi_a)),
                            SpacetimePoint(t_b, model.position(E, phi_a + dphi)));
    seg.branch = BranchSelector(detail::count_crossings(phi_a, phi_a + dphi),
                                model.velocity(E, phi_a) > 0.0);
    return seg;
}

HierarchySegment random_h_segment(Rng& rng, int power, double margin) {
    const double m = rng.log_uniform(0.4, 2.5);
    const double k = rng.log_uniform(0.3, 4.0);
    const double E = rng.log_uniform(0.1, 10.0);
    const double theta0 = rng.uniform(0.0, 2.0 * kPi);
    const double t0 = rng.uniform(-1.0, 1.0);

    double phi_a = 0.6;
    double dphi = 1.1;
    for (int attempt = 0; attempt < 256; ++attempt) {
        phi_a = rng.uniform(0.0, 2.0 * kPi);
        dphi = rng.uniform(0.1, 2.0 * kPi - 0.1);
        if (grid_distance(phi_a, kPi / 2) < margin) continue;
        if (grid_distance(phi_a + dphi, kPi / 2) < margin) continue;
        if (grid_distance(dphi, kPi) < margin) continue;
        break;
    }

    HierarchySegment seg;
    seg.params = HierarchyParams(power, m, k);
    seg.chart = HierarchyChart(seg.params, E, theta0, t0);
    seg.theta_a = theta0 + phi_a;
    seg.theta_b = theta0 + phi_a + dphi;

    const detail::PowerLawModel model(power, m, k);
    const double t_a = t0 + model.time_between(E, 0.0, phi_a);
    const double t_b = t_a + model.time_between(E, phi_a, phi_a + dphi);
    seg.data = BoundaryData(SpacetimePoint(t_a, model.position(E, phi_a)),
                            SpacetimePoint(t_b, model.position(E, phi_a + dphi)));
    seg.branch = BranchSelector(detail::count_crossings(phi_a, phi_a + dphi),
                                model.velocity(E, phi_a) > 0.0);
    return seg;
}

double gamma_quarter_period(int power, double mass, double stiffness,
                            double energy) {
    const double n = static_cast<double>(power);
    const double amp = std::pow(2.0 * n * energy / stiffness, 1.0 / (2.0 * n));
    const double prefactor = amp / (n * std::sqrt(2.0 * energy / mass));
    const double quarter = std::tgamma(1.0 / (2.0 * n)) *
                           std::sqrt(kPi) /
                           (2.0 * std::tgamma(1.0 / (2.0 * n) + 0.5));
    return prefactor * quarter;
}

PropertyResult run_quarter_period(const Options& opts) {
    const int count = scaled_count(opts, 8);
    return run_suite(
        opts, "quarter-period-anchor", count, pick_tol(opts, 1e-9),
        [](int i, Rng& rng) -> CaseOutcome {
            const int n = (i == 0) ? 2 : 1 + (i % 4);
            const double m = (i == 0) ? 1.0 : rng.log_uniform(0.3, 3.0);
            const double k = (i == 0) ? 4.0 : rng.log_uniform(0.3, 5.0);
            const double E = (i == 0) ? 1.0 : rng.log_uniform(0.05, 20.0);
            const detail::PowerLawModel model(n, m, k);
            const double ref = gamma_quarter_period(n, m, k, E);
            const double quarter = model.time_between(E, 0.0, kPi / 2);
            const double full = model.period(E);
            const double worst =
                std::max(std::fabs(quarter - ref) / ref,
                         std::fabs(full - 4.0 * ref) / (4.0 * ref));
            return {worst, "n=" + std::to_string(n)};
        });
}

PropertyResult run_action_vs_oracle(const Options& opts) {
    const int count = scaled_count(opts, 200);
    return run_suite(
        opts, "action-vs-ode-oracle", count, pick_tol(opts, 1e-8),
        [](int, Rng& rng) -> CaseOutcome {
            const Segment seg = random_segment(rng);
            const auto sol = bvp::from_chart(seg.chart, seg.theta_a, seg.theta_b);
            const double closed = action::evaluate(sol).total;
            const double closed_mi = action::momentum_integral(sol);

            const double v_a = extremal::velocity(seg.chart, seg.theta_a);
            const auto ode = oracle::integrate_newton(
                seg.params,
                PhasePoint(seg.data.a.t, seg.data.a.y, v_a, seg.params.m),
                seg.data.b.t, 1e-12);
            const double ref =
                oracle::lagrangian_action_quadrature(ode, seg.data.a.t, seg.data.b.t);
            const double ref_mi =
                oracle::momentum_quadrature(ode, seg.data.a.t, seg.data.b.t);

            const double dt = seg.data.b.t - seg.data.a.t;
            const double scale = 0.1 * seg.chart.E * dt;
            const double d_total =
                std::fabs(closed - ref) / std::max(std::fabs(closed), scale);
            const double d_mi =
                std::fabs(closed_mi - ref_mi) / std::max(std::fabs(closed_mi), scale);
            return {std::max(d_total, d_mi),
                    d_total >= d_mi ? "action total" : "momentum integral"};
        });
}

PropertyResult run_hamilton_jacobi(const Options& opts) {
    const int count = scaled_count(opts, 20);
    return run_suite(
        opts, "hamilton-jacobi-gradients", count, pick_tol(opts, 1e-6),
        [](int, Rng& rng) -> CaseOutcome {
            // Stencil points must stay on the branch, so the draw keeps a
            // wider angular margin from the turning folds (clearance grows
            // with the square of the margin; 0.15 leaves ~50x the largest
            // step). A draw that still straddles a fold is redrawn.
            for (int attempt = 0; attempt < 16; ++attempt) {
                const Segment seg = random_segment(rng, 0.15);
                const auto base =
                    bvp::solve(seg.params, seg.data, seg.branch, 1e-10);
                const auto der = action::endpoint_derivatives(base);
                const double E = base.chart.E;
                const double pscale =
                    0.05 * std::sqrt(2.0 * seg.params.m * E);

                struct Check {
                    oracle::EndpointComponent component;
                    double expected;
                    double denom;
                    const char* label;
                };
                const Check checks[] = {
                    {oracle::EndpointComponent::t_a, +der.H_a, E, "dS/dt_a"},
                    {oracle::EndpointComponent::t_b, -der.H_b, E, "dS/dt_b"},
                    {oracle::EndpointComponent::y_a, -der.p_a,
                     std::max(std::fabs(der.p_a), pscale), "dS/dy_a"},
                    {oracle::EndpointComponent::y_b, +der.p_b,
                     std::max(std::fabs(der.p_b), pscale), "dS/dy_b"},
                };
                CaseOutcome out;
                try {
                    for (const Check& c : checks) {
                        const auto g = oracle::fd_action_gradient(
                            seg.params, seg.data, seg.branch, c.component,
                            1e-10);
                        const double rel =
                            std::fabs(g.value - c.expected) / c.denom;
                        if (rel > out.worst) out = {rel, c.label};
                    }
                } catch (const InvalidStencilError&) {
                    continue;
                }
                return out;
            }
            return {std::numeric_limits<double>::infinity(),
                    "no stencil-safe segment in 16 draws"};
        });
}

PropertyResult run_form_equivalence(const Options& opts) {
    const int count = scaled_count(opts, 200);
    return run_suite(
        opts, "form-equivalence", count, pick_tol(opts, 1e-10),
        [](int, Rng& rng) -> CaseOutcome {
            const Segment seg = random_segment(rng);
            const auto sol = bvp::from_chart(seg.chart, seg.theta_a, seg.theta_b);
            const auto primary = action::evaluate(sol, action::ActionForm::Primary);
            const auto tangent = action::evaluate(sol, action::ActionForm::VariantMax);
            const auto expanded =
                action::evaluate(sol, action::ActionForm::VariantMaxExpanded);

            const double dt = seg.data.b.t - seg.data.a.t;
            const double denom = std::max(
                {std::fabs(primary.total), std::fabs(tangent.total),
                 std::fabs(expanded.total), 1e-3 * seg.chart.E * dt});
            CaseOutcome out;
            const auto track = [&](double v, const char* label) {
                if (v > out.worst) out = {v, label};
            };
            track(std::fabs(primary.total - tangent.total) / denom, "primary-vs-tangent");
            track(std::fabs(primary.total - expanded.total) / denom, "primary-vs-expanded");
            track(std::fabs(tangent.total - expanded.total) / denom, "tangent-vs-expanded");

            // Each breakdown must satisfy its own defining split.
            for (const auto* b : {&primary, &tangent, &expanded}) {
                track(std::fabs(b->total - (b->momentum_integral - b->energy_term)) / denom,
                      "breakdown-split");
            }

            // Pointwise secant expansion of the boundary kernel, sampled at
            // interior angles away from the anchor's poles.
            const double amp = amplitude(seg.chart);
            const double anchor = action::turning_anchor(sol);
            const double y_max = extremal::position(seg.chart, anchor);
            for (int j = 0; j <= 6; ++j) {
                const double theta =
                    seg.theta_a + (seg.theta_b - seg.theta_a) * j / 6.0;
                const double dm = theta - anchor;
                const double cm = std::cos(dm);
                if (std::fabs(cm) < 0.05) continue;
                const double y = extremal::position(seg.chart, theta);
                const double lhs = -std::fabs(y) * y * y * std::tan(dm);
                const double rhs =
                    std::sin(dm) * (-3.0 * y * y_max * std::fabs(y_max) +
                                    2.0 * std::fabs(y_max) * y_max * y_max *
                                        std::pow(cm * cm, 0.75) / cm);
                track(std::fabs(lhs - rhs) / (amp * amp * amp),
                      "secant-expansion");
            }
            return out;
        });
}

PropertyResult run_bvp_round_trip(const Options& opts) {
    const int count = scaled_count(opts, 100);
    // Headline tolerance covers the energy round trip; the separation
    // identity carries a 100x tighter target and is rescaled into the same
    // units before taking the max.
    return run_suite(
        opts, "bvp-round-trip", count, pick_tol(opts, 1e-8),
        [](int, Rng& rng) -> CaseOutcome {
            const Segment seg = random_segment(rng);
            const auto roots = bvp::solve_all(seg.params, seg.data, seg.branch, 1e-10);
            if (roots.empty()) return {kInf, "no roots returned"};

            const double dtheta_ref = seg.theta_b - seg.theta_a;
            double recovery = kInf;
            for (const auto& root : roots) {
                const double dE =
                    std::fabs(root.chart.E - seg.chart.E) / seg.chart.E;
                const double dth =
                    std::fabs((root.theta_b - root.theta_a) - dtheta_ref);
                recovery = std::min(recovery, std::max(dE, dth));
            }

            const detail::PowerLawModel model(2, seg.params.m, seg.params.k4);
            const double w_a = model.signed_power(seg.data.a.y);
            const double w_b = model.signed_power(seg.data.b.y);
            double identity = 0.0;
            for (const auto& root : roots) {
                const double a4 = std::sqrt(4.0 * root.chart.E / seg.params.k4);
                const double dth = root.theta_b - root.theta_a;
                const double sd = std::sin(dth);
                const double sh = std::sin(dth / 2.0);
                const double lhs = a4 * a4 * sd * sd;
                const double rhs =
                    (w_b - w_a) * (w_b - w_a) + 4.0 * w_a * w_b * sh * sh;
                identity = std::max(identity, std::fabs(lhs - rhs) / (a4 * a4));
            }

            CaseOutcome out{recovery, "energy recovery"};
            if (identity * 100.0 > out.worst)
                out = {identity * 100.0, "separation identity (rescaled x100)"};
            return out;
        });
}

PropertyResult run_hierarchy_n2(const Options& opts) {
    const int count = scaled_count(opts, 50);
    return run_suite(
        opts, "hierarchy-n2-reduces-to-quartic", count, pick_tol(opts, 1e-12),
        [](int, Rng& rng) -> CaseOutcome {
            const Segment seg = random_segment(rng);
            const HierarchyParams hp(2, seg.params.m, seg.params.k4);
            const HierarchyChart hc(hp, seg.chart.E, seg.chart.theta0,
                                    seg.chart.t0);
            const auto hsol = hierarchy::h_from_chart(hc, seg.theta_a, seg.theta_b);
            const auto qsol = bvp::from_chart(seg.chart, seg.theta_a, seg.theta_b);
            const auto hb = hierarchy::h_action_of(hsol);
            const auto qb = action::evaluate(qsol);

            const double dt = seg.data.b.t - seg.data.a.t;
            const double denom =
                std::max(std::fabs(qb.total), 1e-3 * seg.chart.E * dt);
            CaseOutcome out{std::fabs(hb.total - qb.total) / denom, "total"};

            const auto hd = hierarchy::h_endpoint_derivatives(hsol);
            const auto qd = action::endpoint_derivatives(qsol);
            const double pref = std::sqrt(2.0 * seg.params.m * seg.chart.E);
            const double dp =
                std::max(std::fabs(hd.p_a - qd.p_a), std::fabs(hd.p_b - qd.p_b)) /
                pref;
            if (dp > out.worst) out = {dp, "endpoint momenta"};

            const double amp = amplitude(seg.chart);
            for (int j = 0; j < 4; ++j) {
                const double theta =
                    rng.uniform(seg.theta_a, seg.theta_b);
                const double dy = std::fabs(hierarchy::h_position(hc, theta) -
                                            extremal::position(seg.chart, theta)) /
                                  amp;
                if (dy > out.worst) out = {dy, "sampled position"};
            }
            return out;
        });
}

PropertyResult run_hierarchy_n1(const Options& opts) {
    const int count = scaled_count(opts, 50);
    return run_suite(
        opts, "hierarchy-n1-matches-harmonic", count, pick_tol(opts, 1e-10),
        [](int, Rng& rng) -> CaseOutcome {
            const HierarchySegment seg = random_h_segment(rng, 1);
            const auto hsol =
                hierarchy::h_from_chart(seg.chart, seg.theta_a, seg.theta_b);
            const double closed = hierarchy::h_action_of(hsol).total;
            const double omega = std::sqrt(seg.params.k2n / seg.params.m);
            const double ref =
                hierarchy::ho_principal_function(seg.params.m, omega, seg.data);

            const double dt = seg.data.b.t - seg.data.a.t;
            const double denom =
                std::max(std::fabs(ref), 1e-2 * seg.chart.E * dt);
            CaseOutcome out{std::fabs(closed - ref) / denom, "principal function"};

            const double period = hierarchy::h_period(seg.chart);
            const double dT = std::fabs(period - 2.0 * kPi / omega) * omega /
                              (2.0 * kPi);
            if (dT > out.worst) out = {dT, "period"};

            const double amp_ref = std::sqrt(2.0 * seg.chart.E / seg.params.k2n);
            const double theta = rng.uniform(seg.theta_a, seg.theta_b);
            const double dy =
                std::fabs(hierarchy::h_position(seg.chart, theta) -
                          amp_ref * std::sin(theta - seg.chart.theta0)) /
                amp_ref;
            if (dy > out.worst) out = {dy, "sinusoid position"};
            return out;
        });
}

PropertyResult run_hierarchy_oracle(const Options& opts) {
    const int count = scaled_count(opts, 50);
    return run_suite(
        opts, "hierarchy-action-vs-ode-oracle", count, pick_tol(opts, 1e-8),
        [](int i, Rng& rng) -> CaseOutcome {
            const int n = 3 + (i % 2);
            const HierarchySegment seg = random_h_segment(rng, n);
            const auto hsol =
                hierarchy::h_from_chart(seg.chart, seg.theta_a, seg.theta_b);
            const double closed = hierarchy::h_action_of(hsol).total;

            const double v_a = hierarchy::h_velocity(seg.chart, seg.theta_a);
            const auto ode = oracle::integrate_newton(
                seg.params,
                PhasePoint(seg.data.a.t, seg.data.a.y, v_a, seg.params.m),
                seg.data.b.t, 1e-12);
            const double ref =
                oracle::lagrangian_action_quadrature(ode, seg.data.a.t, seg.data.b.t);

            const double dt = seg.data.b.t - seg.data.a.t;
            const double denom =
                std::max(std::fabs(closed), 0.1 * seg.chart.E * dt);
            return {std::fabs(closed - ref) / denom, "n=" + std::to_string(n)};
        });
}

PropertyResult run_hierarchy_coefficient(const Options& opts) {
    // One case per power index; each fits the energy-term slope over a batch
    // of segments. The boundary difference is removed with the closed-form
    // kernel, so the fit isolates the E*dt coefficient.
    const int count = 4;
    return run_suite(
        opts, "hierarchy-energy-coefficient", count, pick_tol(opts, 1e-10),
        [](int i, Rng& rng) -> CaseOutcome {
            const int n = i + 1;
            double sxx = 0.0;
            double sxy = 0.0;
            for (int j = 0; j < 12; ++j) {
                const HierarchySegment seg = random_h_segment(rng, n);
                const auto hb = hierarchy::h_action_of(
                    hierarchy::h_from_chart(seg.chart, seg.theta_a, seg.theta_b));
                const double x = seg.chart.E * (seg.data.b.t - seg.data.a.t);
                const double y =
                    hb.total - (hb.boundary_term_b - hb.boundary_term_a);
                sxx += x * x;
                sxy += x * y;
            }
            const double slope = sxy / sxx;
            const double target = (n - 1.0) / (n + 1.0);
            return {std::fabs(slope - target), "n=" + std::to_string(n)};
        });
}

PropertyResult run_trajectory_fidelity(const Options& opts) {
    const int count = std::max(3, scaled_count(opts, 3));
    // Position mismatch is measured against the amplitude; the oracle's own
    // energy drift carries a 1e-9 budget and is rescaled into the same units.
    return run_suite(
        opts, "trajectory-vs-ode-oracle", count, pick_tol(opts, 1e-7),
        [](int i, Rng& rng) -> CaseOutcome {
            const OscillatorParams params =
                (i == 0) ? OscillatorParams(1.0, 4.0)
                         : OscillatorParams(rng.log_uniform(0.4, 2.5),
                                            rng.log_uniform(0.3, 4.0));
            const double E = (i == 0) ? 1.0 : rng.log_uniform(0.1, 10.0);
            const ExtremalChart chart(params, E,
                                      (i == 0) ? 0.0 : rng.uniform(0.0, 2.0 * kPi),
                                      (i == 0) ? 0.0 : rng.uniform(-1.0, 1.0));

            const double period = extremal::period(chart);
            std::vector<double> grid(257);
            for (std::size_t j = 0; j < grid.size(); ++j)
                grid[j] = chart.t0 + period * static_cast<double>(j) / 256.0;
            const auto closed = extremal::trajectory(chart, grid);

            const double v0 = extremal::velocity(chart, chart.theta0);
            const auto ode = oracle::integrate_newton(
                params, PhasePoint(chart.t0, 0.0, v0, params.m),
                chart.t0 + period, 1e-10);

            const double amp = amplitude(chart);
            double mismatch = 0.0;
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const auto state = ode.state_at(grid[j]);
                mismatch = std::max(
                    mismatch, std::fabs(closed[j].y - state[0]) / amp);
            }
            CaseOutcome out{mismatch, "position"};
            const double drift =
                ode.stats().max_energy_drift * (1e-7 / 1e-9);
            if (drift > out.worst) out = {drift, "energy drift (rescaled)"};
            return out;
        });
}

PropertyResult run_degenerate_handling(const Options& opts) {
    return run_suite(
        opts, "degenerate-input-handling", 1, pick_tol(opts, 0.5),
        [](int, Rng&) -> CaseOutcome {
            const auto fail = [](const char* what) -> CaseOutcome {
                return {1.0, what};
            };

            if (!throws_exactly<DegenerateInputError>(
                    [] { ExtremalChart(OscillatorParams(1.0, 1.0), 0.0); }))
                return fail("E = 0 chart accepted");
            if (!throws_exactly<DegenerateInputError>(
                    [] { ExtremalChart(OscillatorParams(1.0, 1.0), -1.0); }))
                return fail("E < 0 chart accepted");
            if (!throws_exactly<DegenerateInputError>(
                    [] { OscillatorParams(0.0, 1.0); }))
                return fail("m = 0 accepted");
            if (!throws_exactly<DegenerateInputError>(
                    [] { HierarchyParams(0, 1.0, 1.0); }))
                return fail("n = 0 accepted");
            if (!throws_exactly<DegenerateInputError>([] {
                    BoundaryData(SpacetimePoint(1.0, 0.0), SpacetimePoint(1.0, 0.5));
                }))
                return fail("zero-duration boundary data accepted");

            const ExtremalChart chart(OscillatorParams(1.0, 4.0), 1.0);

            // Half-period separation: endpoint-anchored reconstruction is
            // singular and must say so.
            {
                const auto sol = bvp::from_chart(chart, 0.3, 0.3 + kPi);
                const auto times = bvp::endpoint_times(sol);
                const double mid = 0.5 * (times.first + times.second);
                if (!throws_exactly<DegenerateSeparationError>(
                        [&] { bvp::interpolate(sol, mid); }))
                    return fail("half-period interpolate did not throw");
                if (!throws_exactly<DegenerateSeparationError>(
                        [&] { bvp::anchored_sin_cos(sol, 0.6); }))
                    return fail("half-period anchored_sin_cos did not throw");
            }

            // Crossing endpoint: the regularized boundary kernel stays
            // finite and vanishes exactly at y = 0; the secant-anchored
            // variants hit their pole instead.
            {
                const auto sol = bvp::from_chart(chart, 0.0, 2.35);
                const double mi = action::momentum_integral(sol);
                const auto primary = action::evaluate(sol);
                if (!std::isfinite(mi) || !std::isfinite(primary.total))
                    return fail("crossing-endpoint action not finite");
                if (primary.boundary_term_a != 0.0)
                    return fail("boundary term at a crossing not exactly zero");
                if (!throws_exactly<PoleError>([&] {
                        action::evaluate(sol, action::ActionForm::VariantMax);
                    }))
                    return fail("variant form at its pole did not throw");
            }

            if (!throws_exactly<DegenerateInputError>([&] {
                    bvp::from_chart(chart, 1.0, 1.0);
                }))
                return fail("empty angular window accepted");
            if (!throws_exactly<DegenerateInputError>([&] {
                    bvp::solve(OscillatorParams(1.0, 1.0),
                               BoundaryData(SpacetimePoint(0.0, 0.5),
                                            SpacetimePoint(1.0, 0.6)),
                               BranchSelector(0, true), 1.0);
                }))
                return fail("out-of-range solver tolerance accepted");

            // Sign pattern incompatible with the branch label: positive to
            // negative displacement cannot happen without a crossing.
            if (!throws_exactly<NoSolutionError>([] {
                    bvp::solve(OscillatorParams(1.0, 1.0),
                               BoundaryData(SpacetimePoint(0.0, 0.7),
                                            SpacetimePoint(0.4, -0.7)),
                               BranchSelector(0, true));
                }))
                return fail("parity-violating branch did not throw");

            return {0.0, ""};
        });
}

std::vector<PropertyResult> run_all(const Options& opts) {
    if (opts.cases <= 0) return {};
    std::vector<PropertyResult> report;
    report.push_back(run_quarter_period(opts));
    report.push_back(run_action_vs_oracle(opts));
    report.push_back(run_hamilton_jacobi(opts));
    report.push_back(run_form_equivalence(opts));
    report.push_back(run_bvp_round_trip(opts));
    report.push_back(run_hierarchy_n2(opts));
    report.push_back(run_hierarchy_n1(opts));
    report.push_back(run_hierarchy_oracle(opts));
    report.push_back(run_hierarchy_coefficient(opts));
    report.push_back(run_trajectory_fidelity(opts));
    report.push_back(run_degenerate_handling(opts));
    return report;
}

}  // namespace qo::verify
