// qo: command-line front end for the closed-form quartic-oscillator action
// library and its even-power relatives. Machine-readable JSON/CSV output,
// deterministic under fixed seed.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qo/action.hpp"
#include "qo/bvp.hpp"
#include "qo/detail/parallel.hpp"
#include "qo/errors.hpp"
#include "qo/extremal.hpp"
#include "qo/hierarchy.hpp"
#include "qo/types.hpp"
#include "qo/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

// Shortest decimal form that parses back to the same double.
std::string fmt(double v) {
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

struct OutputSink {
    std::string path;  // empty: stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw qo::DegenerateInputError("cannot open output path: " + path);
        out << text;
    }
};

const char* error_slug(const qo::Error& e) {
    if (dynamic_cast<const qo::DegenerateInputError*>(&e)) return "degenerate-input";
    if (dynamic_cast<const qo::NoSolutionError*>(&e)) return "no-solution";
    if (dynamic_cast<const qo::NonConvergenceError*>(&e)) return "non-convergence";
    if (dynamic_cast<const qo::DegenerateSeparationError*>(&e)) return "degenerate-separation";
    if (dynamic_cast<const qo::PoleError*>(&e)) return "pole";
    if (dynamic_cast<const qo::QuadratureError*>(&e)) return "quadrature";
    if (dynamic_cast<const qo::InvalidStencilError*>(&e)) return "invalid-stencil";
    return "error";
}

int exit_code_of(const qo::Error& e) {
    if (dynamic_cast<const qo::NonConvergenceError*>(&e) ||
        dynamic_cast<const qo::QuadratureError*>(&e) ||
        dynamic_cast<const qo::InvalidStencilError*>(&e))
        return 3;
    return 2;
}

// Endpoint pair plus branch label, shared by several subcommands.
struct EndpointFlags {
    double t_a = 0.0, y_a = 0.0, t_b = 1.0, y_b = 0.0;
    int crossings = 0;
    bool falling = false;

    qo::BoundaryData data() const {
        return qo::BoundaryData(qo::SpacetimePoint(t_a, y_a),
                                qo::SpacetimePoint(t_b, y_b));
    }
    qo::BranchSelector branch() const {
        return qo::BranchSelector(crossings, !falling);
    }

    void add_to(CLI::App* cmd, bool required) {
        auto* ta = cmd->add_option("--ta", t_a, "endpoint time t_a");
        auto* ya = cmd->add_option("--ya", y_a, "endpoint position y_a");
        auto* tb = cmd->add_option("--tb", t_b, "endpoint time t_b");
        auto* yb = cmd->add_option("--yb", y_b, "endpoint position y_b");
        if (required) {
            ta->required();
            ya->required();
            tb->required();
            yb->required();
        }
        cmd->add_option("--crossings", crossings,
                        "zero crossings strictly between the endpoints")
            ->capture_default_str();
        cmd->add_flag("--falling", falling,
                      "velocity at t_a is negative (default: rising)");
    }
};

json branch_json(const qo::BranchSelector& branch) {
    json j;
    j["crossings"] = branch.crossings;
    j["rising"] = branch.rising_at_a;
    return j;
}

json endpoints_json(const qo::BoundaryData& data) {
    json j;
    j["t_a"] = data.a.t;
    j["y_a"] = data.a.y;
    j["t_b"] = data.b.t;
    j["y_b"] = data.b.y;
    return j;
}

json breakdown_json(const qo::ActionBreakdown& b) {
    json j;
    j["momentum_integral"] = b.momentum_integral;
    j["energy_term"] = b.energy_term;
    j["boundary_term_b"] = b.boundary_term_b;
    j["boundary_term_a"] = b.boundary_term_a;
    j["total"] = b.total;
    return j;
}

// trajectory -----------------------------------------------------------------

struct TrajectoryCfg {
    double m = 1.0, k4 = 1.0;
    double E = 1.0, theta0 = 0.0, t0 = 0.0;
    EndpointFlags ep;
    double t_start = 0.0, t_end = 0.0;
    int samples = 256;
    double tol = 1e-10;
    std::string format = "csv";
    OutputSink sink;
};

int run_trajectory(const TrajectoryCfg& cfg, const CLI::App* cmd) {
    const bool chart_mode = cmd->count("--E") > 0;
    const bool endpoint_mode = cmd->count("--ta") || cmd->count("--ya") ||
                               cmd->count("--tb") || cmd->count("--yb");
    if (chart_mode && endpoint_mode)
        throw qo::DegenerateInputError(
            "chart flags (--E/--theta0/--t0) and endpoint flags (--ta/--ya/--tb/--yb) "
            "are mutually exclusive");
    if (!chart_mode && !endpoint_mode)
        throw qo::DegenerateInputError(
            "trajectory needs either a chart (--E) or endpoints (--ta --ya --tb --yb)");

    const qo::OscillatorParams params(cfg.m, cfg.k4);
    double start = 0.0;
    double end = 0.0;
    std::optional<qo::ExtremalChart> chart;
    if (chart_mode) {
        chart.emplace(params, cfg.E, cfg.theta0, cfg.t0);
        start = cmd->count("--t-start") ? cfg.t_start : chart->t0;
        if (cfg.samples > 1 && !cmd->count("--t-end"))
            throw qo::DegenerateInputError("chart-mode trajectory needs --t-end");
        end = cmd->count("--t-end") ? cfg.t_end : start;
    } else {
        const auto sol =
            qo::bvp::solve(params, cfg.ep.data(), cfg.ep.branch(), cfg.tol);
        chart.emplace(sol.chart);
        start = cmd->count("--t-start") ? cfg.t_start : cfg.ep.t_a;
        end = cmd->count("--t-end") ? cfg.t_end : cfg.ep.t_b;
    }
    if (cfg.samples < 1)
        throw qo::DegenerateInputError("--samples must be >= 1");
    if (cfg.samples > 1 && !(end > start))
        throw qo::DegenerateInputError("time grid needs t_end > t_start");

    std::vector<double> times(static_cast<std::size_t>(cfg.samples));
    for (int j = 0; j < cfg.samples; ++j) {
        times[static_cast<std::size_t>(j)] =
            cfg.samples == 1
                ? start
                : start + (end - start) * j / (cfg.samples - 1.0);
    }
    const auto rows = qo::extremal::trajectory(*chart, times);

    std::vector<double> thetas(times.size());
    std::vector<double> residuals(times.size());
    for (std::size_t j = 0; j < times.size(); ++j) {
        thetas[j] = qo::extremal::theta_of_time(*chart, times[j]);
        const double energy = 0.5 * cfg.m * rows[j].v * rows[j].v +
                              cfg.k4 * std::pow(rows[j].y, 4) / 4.0;
        residuals[j] = (energy - chart->E) / chart->E;
    }

    if (cfg.format == "json") {
        json j;
        j["command"] = "trajectory";
        j["params"]["m"] = cfg.m;
        j["params"]["k4"] = cfg.k4;
        j["chart"]["E"] = chart->E;
        j["chart"]["theta0"] = chart->theta0;
        j["chart"]["t0"] = chart->t0;
        j["period"] = qo::extremal::period(*chart);
        json cols;
        for (const char* name : {"t", "y", "v", "p", "theta", "energy_residual"})
            cols[name] = json::array();
        for (std::size_t k = 0; k < rows.size(); ++k) {
            cols["t"].push_back(rows[k].t);
            cols["y"].push_back(rows[k].y);
            cols["v"].push_back(rows[k].v);
            cols["p"].push_back(rows[k].p);
            cols["theta"].push_back(thetas[k]);
            cols["energy_residual"].push_back(residuals[k]);
        }
        j["columns"] = cols;
        cfg.sink.write(j.dump(2) + "\n");
        return 0;
    }

    std::string out;
    out += "# command: trajectory\n";
    out += "# m: " + fmt(cfg.m) + "\n";
    out += "# k4: " + fmt(cfg.k4) + "\n";
    out += "# E: " + fmt(chart->E) + "\n";
    out += "# theta0: " + fmt(chart->theta0) + "\n";
    out += "# t0: " + fmt(chart->t0) + "\n";
    out += "t,y,v,p,theta,energy_residual\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        out += fmt(rows[k].t) + "," + fmt(rows[k].y) + "," + fmt(rows[k].v) +
               "," + fmt(rows[k].p) + "," + fmt(thetas[k]) + "," +
               fmt(residuals[k]) + "\n";
    }
    cfg.sink.write(out);
    return 0;
}

// action ---------------------------------------------------------------------

struct ActionCfg {
    double m = 1.0, k4 = 1.0;
    EndpointFlags ep;
    std::string form = "primary";
    bool all_forms = false;
    double tol = 1e-10;
    OutputSink sink;
};

qo::action::ActionForm parse_form(const std::string& name) {
    if (name == "primary") return qo::action::ActionForm::Primary;
    if (name == "variant-max") return qo::action::ActionForm::VariantMax;
    if (name == "variant-max-expanded")
        return qo::action::ActionForm::VariantMaxExpanded;
    throw qo::DegenerateInputError("unknown action form: " + name);
}

int run_action(const ActionCfg& cfg) {
    const qo::OscillatorParams params(cfg.m, cfg.k4);
    const auto sol =
        qo::bvp::solve(params, cfg.ep.data(), cfg.ep.branch(), cfg.tol);
    const auto breakdown = qo::action::evaluate(sol, parse_form(cfg.form));
    const auto der = qo::action::endpoint_derivatives(sol);

    json j;
    j["command"] = "action";
    j["params"]["m"] = cfg.m;
    j["params"]["k4"] = cfg.k4;
    j["endpoints"] = endpoints_json(cfg.ep.data());
    j["branch"] = branch_json(cfg.ep.branch());
    j["chart"]["E"] = sol.chart.E;
    j["chart"]["theta0"] = sol.chart.theta0;
    j["chart"]["t0"] = sol.chart.t0;
    j["chart"]["theta_a"] = sol.theta_a;
    j["chart"]["theta_b"] = sol.theta_b;
    j["residuals"] = sol.residuals;
    j["form"] = cfg.form;
    j["breakdown"] = breakdown_json(breakdown);
    j["endpoint_derivatives"]["p_a"] = der.p_a;
    j["endpoint_derivatives"]["p_b"] = der.p_b;
    j["endpoint_derivatives"]["H_a"] = der.H_a;
    j["endpoint_derivatives"]["H_b"] = der.H_b;

    if (cfg.all_forms) {
        json forms;
        const std::pair<const char*, qo::action::ActionForm> all[] = {
            {"primary", qo::action::ActionForm::Primary},
            {"variant-max", qo::action::ActionForm::VariantMax},
            {"variant-max-expanded", qo::action::ActionForm::VariantMaxExpanded},
        };
        for (const auto& [name, form] : all) {
            try {
                forms[name] = breakdown_json(qo::action::evaluate(sol, form));
            } catch (const qo::Error& e) {
                forms[name]["error"]["type"] = error_slug(e);
                forms[name]["error"]["what"] = e.what();
            }
        }
        j["forms"] = forms;
    }
    cfg.sink.write(j.dump(2) + "\n");
    return 0;
}

// verify ---------------------------------------------------------------------

struct VerifyCfg {
    std::uint64_t seed = 42;
    int cases = 50;
    double tol = 0.0;
    int threads = 0;
    bool timings = false;
    OutputSink sink;
};

int run_verify(const VerifyCfg& cfg) {
    qo::verify::Options opts;
    opts.seed = cfg.seed;
    opts.cases = cfg.cases;
    opts.tol_override = cfg.tol;
    opts.threads = cfg.threads;
    const auto report = qo::verify::run_all(opts);

    json j;
    j["command"] = "verify";
    j["seed"] = cfg.seed;
    j["cases"] = cfg.cases;
    if (cfg.tol > 0.0) j["tol_override"] = cfg.tol;
    j["properties"] = json::array();
    bool all_passed = true;
    for (const auto& p : report) {
        json pj;
        pj["name"] = p.name;
        pj["cases"] = p.cases;
        pj["tolerance"] = p.tolerance;
        pj["worst"] = p.worst;
        pj["passed"] = p.passed;
        pj["detail"] = p.detail;
        // Wall-clock timings are opt-in so that the default report is
        // byte-identical across runs with the same seed.
        if (cfg.timings) pj["seconds"] = p.seconds;
        j["properties"].push_back(pj);
        all_passed = all_passed && p.passed;
    }
    j["all_passed"] = all_passed;
    cfg.sink.write(j.dump(2) + "\n");
    return all_passed ? 0 : 1;
}

// hierarchy ------------------------------------------------------------------

struct HierarchyCfg {
    int n = 2;
    double m = 1.0, k2n = 1.0;
    EndpointFlags ep;
    double tol = 1e-10;
    OutputSink sink;
};

int run_hierarchy(const HierarchyCfg& cfg) {
    const qo::HierarchyParams params(cfg.n, cfg.m, cfg.k2n);
    const auto sol =
        qo::hierarchy::h_solve(params, cfg.ep.data(), cfg.ep.branch(), cfg.tol);
    const auto breakdown = qo::hierarchy::h_action_of(sol);
    const auto der = qo::hierarchy::h_endpoint_derivatives(sol);

    json j;
    j["command"] = "hierarchy";
    j["params"]["n"] = cfg.n;
    j["params"]["m"] = cfg.m;
    j["params"]["k2n"] = cfg.k2n;
    j["endpoints"] = endpoints_json(cfg.ep.data());
    j["branch"] = branch_json(cfg.ep.branch());
    j["chart"]["E"] = sol.chart.E;
    j["chart"]["theta0"] = sol.chart.theta0;
    j["chart"]["t0"] = sol.chart.t0;
    j["chart"]["theta_a"] = sol.theta_a;
    j["chart"]["theta_b"] = sol.theta_b;
    j["residuals"] = sol.residuals;
    j["period"] = qo::hierarchy::h_period(sol.chart);
    j["breakdown"] = breakdown_json(breakdown);
    j["endpoint_derivatives"]["p_a"] = der.p_a;
    j["endpoint_derivatives"]["p_b"] = der.p_b;
    j["endpoint_derivatives"]["H_a"] = der.H_a;
    j["endpoint_derivatives"]["H_b"] = der.H_b;

    if (cfg.n == 1) {
        // Side-by-side reference: the textbook harmonic principal function.
        try {
            j["ho_reference"] = qo::hierarchy::ho_principal_function(
                cfg.m, std::sqrt(cfg.k2n / cfg.m), cfg.ep.data());
        } catch (const qo::Error& e) {
            j["ho_reference"] = nullptr;
            j["ho_reference_note"] = e.what();
        }
    }
    cfg.sink.write(j.dump(2) + "\n");
    return 0;
}

// sweep ----------------------------------------------------------------------

struct SweepCfg {
    std::string axis;
    double from = 0.0, to = 0.0;
    int count = 1;
    int n = 2;
    double m = 1.0, k2n = 1.0;
    EndpointFlags ep;
    double theta_a = 0.0, theta_b = 0.0;
    double tol = 1e-10;
    int threads = 0;
    OutputSink sink;
};

int run_sweep(const SweepCfg& cfg, const CLI::App* cmd) {
    if (cfg.count < 1)
        throw qo::DegenerateInputError("--count must be >= 1");
    if (cfg.count > 1 && !cmd->count("--to"))
        throw qo::DegenerateInputError("--count > 1 needs --to");
    if (cfg.axis == "E" && !(cfg.theta_b > cfg.theta_a))
        throw qo::DegenerateInputError(
            "axis E sweeps a chart window: needs --theta-a < --theta-b");

    std::vector<double> values(static_cast<std::size_t>(cfg.count));
    for (int i = 0; i < cfg.count; ++i) {
        values[static_cast<std::size_t>(i)] =
            cfg.count == 1
                ? cfg.from
                : cfg.from + (cfg.to - cfg.from) * i / (cfg.count - 1.0);
    }

    struct Row {
        double value = 0.0;
        bool ok = false;
        double S = 0.0, E = 0.0, p_a = 0.0, p_b = 0.0, period = 0.0;
        std::string error;
    };
    std::vector<Row> rows(values.size());

    const auto solve_row = [&](double value) -> qo::hierarchy::HierarchySolution {
        if (cfg.axis == "E") {
            const qo::HierarchyChart chart(
                qo::HierarchyParams(cfg.n, cfg.m, cfg.k2n), value, 0.0, 0.0);
            return qo::hierarchy::h_from_chart(chart, cfg.theta_a, cfg.theta_b);
        }
        if (cfg.axis == "dt") {
            const qo::BoundaryData data(
                qo::SpacetimePoint(cfg.ep.t_a, cfg.ep.y_a),
                qo::SpacetimePoint(cfg.ep.t_a + value, cfg.ep.y_b));
            return qo::hierarchy::h_solve(
                qo::HierarchyParams(cfg.n, cfg.m, cfg.k2n), data,
                cfg.ep.branch(), cfg.tol);
        }
        if (cfg.axis == "yb") {
            const qo::BoundaryData data(
                qo::SpacetimePoint(cfg.ep.t_a, cfg.ep.y_a),
                qo::SpacetimePoint(cfg.ep.t_b, value));
            return qo::hierarchy::h_solve(
                qo::HierarchyParams(cfg.n, cfg.m, cfg.k2n), data,
                cfg.ep.branch(), cfg.tol);
        }
        // axis n
        const int n = static_cast<int>(std::llround(value));
        return qo::hierarchy::h_solve(qo::HierarchyParams(n, cfg.m, cfg.k2n),
                                      cfg.ep.data(), cfg.ep.branch(), cfg.tol);
    };

    qo::detail::parallel_for(
        static_cast<int>(values.size()),
        qo::detail::thread_budget(cfg.threads), [&](int i) {
            Row& row = rows[static_cast<std::size_t>(i)];
            row.value = values[static_cast<std::size_t>(i)];
            try {
                const auto sol = solve_row(row.value);
                const auto breakdown = qo::hierarchy::h_action_of(sol);
                const auto der = qo::hierarchy::h_endpoint_derivatives(sol);
                row.ok = true;
                row.S = breakdown.total;
                row.E = sol.chart.E;
                row.p_a = der.p_a;
                row.p_b = der.p_b;
                row.period = qo::hierarchy::h_period(sol.chart);
            } catch (const qo::Error& e) {
                row.error = std::string(error_slug(e)) + ": " + e.what();
            }
        });

    std::string out;
    out += "# command: sweep\n";
    out += "# axis: " + cfg.axis + "\n";
    out += "# n: " + std::to_string(cfg.n) + "\n";
    out += "# m: " + fmt(cfg.m) + "\n";
    out += "# k2n: " + fmt(cfg.k2n) + "\n";
    out += "value,S,E,p_a,p_b,period,error\n";
    for (const Row& row : rows) {
        out += fmt(row.value) + ",";
        if (row.ok) {
            out += fmt(row.S) + "," + fmt(row.E) + "," + fmt(row.p_a) + "," +
                   fmt(row.p_b) + "," + fmt(row.period) + ",";
        } else {
            out += ",,,,,";
        }
        out += row.ok ? std::string() : csv_quote(row.error);
        out += "\n";
    }
    cfg.sink.write(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-form action toolkit for the quartic oscillator family"};
    app.require_subcommand(1);
    std::function<int()> runner;

    auto tcfg = std::make_shared<TrajectoryCfg>();
    CLI::App* t = app.add_subcommand(
        "trajectory", "sample a closed-form extremal on a time grid");
    t->add_option("--m", tcfg->m, "mass")->capture_default_str();
    t->add_option("--k4", tcfg->k4, "quartic stiffness")->capture_default_str();
    t->add_option("--E", tcfg->E, "chart energy");
    t->add_option("--theta0", tcfg->theta0, "chart angle anchor")
        ->capture_default_str();
    t->add_option("--t0", tcfg->t0, "chart time anchor")->capture_default_str();
    tcfg->ep.add_to(t, false);
    t->add_option("--t-start", tcfg->t_start, "grid start (default: chart/segment start)");
    t->add_option("--t-end", tcfg->t_end, "grid end");
    t->add_option("--samples", tcfg->samples, "grid size")->capture_default_str();
    t->add_option("--tol", tcfg->tol, "solver tolerance")->capture_default_str();
    t->add_option("--format", tcfg->format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    t->add_option("--out", tcfg->sink.path, "output path (default: stdout)");
    t->callback([&runner, tcfg, t] {
        runner = [tcfg, t] { return run_trajectory(*tcfg, t); };
    });

    auto acfg = std::make_shared<ActionCfg>();
    CLI::App* a = app.add_subcommand(
        "action", "closed-form action of the extremal through two endpoints");
    a->add_option("--m", acfg->m, "mass")->capture_default_str();
    a->add_option("--k4", acfg->k4, "quartic stiffness")->capture_default_str();
    acfg->ep.add_to(a, true);
    a->add_option("--form", acfg->form, "action form")
        ->check(CLI::IsMember({"primary", "variant-max", "variant-max-expanded"}))
        ->capture_default_str();
    a->add_flag("--all-forms", acfg->all_forms,
                "evaluate every form, embedding per-form errors");
    a->add_option("--tol", acfg->tol, "solver tolerance")->capture_default_str();
    a->add_option("--out", acfg->sink.path, "output path (default: stdout)");
    a->callback([&runner, acfg] { runner = [acfg] { return run_action(*acfg); }; });

    auto vcfg = std::make_shared<VerifyCfg>();
    CLI::App* v = app.add_subcommand(
        "verify", "run the randomized invariant suites and report residuals");
    v->add_option("--seed", vcfg->seed, "RNG seed")->capture_default_str();
    v->add_option("--cases", vcfg->cases, "case-count scale (50 = nominal)")
        ->capture_default_str();
    v->add_option("--tol", vcfg->tol, "override every suite tolerance");
    v->add_option("--threads", vcfg->threads, "worker threads (0: auto)")
        ->capture_default_str();
    v->add_flag("--timings", vcfg->timings,
                "include wall-clock seconds per property");
    v->add_option("--out", vcfg->sink.path, "output path (default: stdout)");
    v->callback([&runner, vcfg] { runner = [vcfg] { return run_verify(*vcfg); }; });

    auto hcfg = std::make_shared<HierarchyCfg>();
    CLI::App* h = app.add_subcommand(
        "hierarchy", "closed-form action for the even-power well y^(2n)");
    h->add_option("--n", hcfg->n, "power index (V = k2n y^{2n} / 2n)")->required();
    h->add_option("--m", hcfg->m, "mass")->capture_default_str();
    h->add_option("--k2n", hcfg->k2n, "stiffness")->capture_default_str();
    hcfg->ep.add_to(h, true);
    h->add_option("--tol", hcfg->tol, "solver tolerance")->capture_default_str();
    h->add_option("--out", hcfg->sink.path, "output path (default: stdout)");
    h->callback(
        [&runner, hcfg] { runner = [hcfg] { return run_hierarchy(*hcfg); }; });

    auto scfg = std::make_shared<SweepCfg>();
    CLI::App* s = app.add_subcommand(
        "sweep", "sweep one parameter axis, one CSV row per value");
    s->add_option("--axis", scfg->axis, "parameter axis")
        ->check(CLI::IsMember({"E", "dt", "yb", "n"}))
        ->required();
    s->add_option("--from", scfg->from, "first axis value")->required();
    s->add_option("--to", scfg->to, "last axis value");
    s->add_option("--count", scfg->count, "number of rows")->capture_default_str();
    s->add_option("--n", scfg->n, "power index")->capture_default_str();
    s->add_option("--m", scfg->m, "mass")->capture_default_str();
    s->add_option("--k2n", scfg->k2n, "stiffness")->capture_default_str();
    scfg->ep.add_to(s, false);
    s->add_option("--theta-a", scfg->theta_a, "chart window start (axis E)");
    s->add_option("--theta-b", scfg->theta_b, "chart window end (axis E)");
    s->add_option("--tol", scfg->tol, "solver tolerance")->capture_default_str();
    s->add_option("--threads", scfg->threads, "worker threads (0: auto)")
        ->capture_default_str();
    s->add_option("--out", scfg->sink.path, "output path (default: stdout)");
    s->callback([&runner, scfg, s] {
        runner = [scfg, s] { return run_sweep(*scfg, s); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return runner();
    } catch (const qo::Error& e) {
        json err;
        err["error"]["type"] = error_slug(e);
        err["error"]["what"] = e.what();
        if (const auto* nc = dynamic_cast<const qo::NonConvergenceError*>(&e))
            err["error"]["best_residuals"] = nc->best_residuals;
        std::cerr << err.dump(2) << "\n";
        return exit_code_of(e);
    } catch (const std::exception& e) {
        json err;
        err["error"]["type"] = "internal";
        err["error"]["what"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 3;
    }
}
