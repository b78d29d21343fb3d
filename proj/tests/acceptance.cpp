// Acceptance gate: one line per criterion, PASS/FAIL, nonzero exit on any
// failure. Tolerances and time budgets are pinned here on purpose.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "qo/verify.hpp"

using qo::verify::PropertyResult;

namespace {

const PropertyResult& find(const std::vector<PropertyResult>& all,
                           const char* name) {
    for (const auto& p : all)
        if (p.name == name) return p;
    std::fprintf(stderr, "acceptance: missing property %s\n", name);
    std::exit(3);
}

bool emit(int criterion, bool pass, const std::string& text) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                text.c_str());
    return pass;
}

std::string residual_clause(const PropertyResult& p) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "worst %.3g vs tol %.1g over %d cases",
                  p.worst, p.tolerance, p.cases);
    std::string s(buf);
    if (!p.passed && !p.detail.empty()) s += " [" + p.detail + "]";
    return s;
}

bool timed_criterion(int criterion, const char* what, const PropertyResult& p,
                     double budget_seconds) {
    const bool in_budget = p.seconds < budget_seconds;
    char buf[320];
    std::snprintf(buf, sizeof buf, "%s (%s; %.2f s, budget %.0f s)", what,
                  residual_clause(p).c_str(), p.seconds, budget_seconds);
    return emit(criterion, p.passed && in_budget, buf);
}

bool plain_criterion(int criterion, const char* what, const PropertyResult& p) {
    return emit(criterion, p.passed,
                std::string(what) + " (" + residual_clause(p) + ")");
}

}  // namespace

int main() {
    qo::verify::Options opts;  // seed 42, nominal case counts
    const auto first = qo::verify::run_all(opts);

    int failures = 0;
    const auto tally = [&failures](bool ok) {
        if (!ok) ++failures;
    };

    tally(timed_criterion(
        1, "quarter-period anchor matches the Gamma-function closed form",
        find(first, "quarter-period-anchor"), 1.0));
    tally(timed_criterion(
        2, "closed-form action matches the ODE oracle on random segments",
        find(first, "action-vs-ode-oracle"), 30.0));
    tally(timed_criterion(
        3, "endpoint derivatives match finite differences of the action",
        find(first, "hamilton-jacobi-gradients"), 60.0));
    tally(plain_criterion(
        4, "the three action forms agree and the expansion identity holds",
        find(first, "form-equivalence")));
    tally(plain_criterion(
        5, "endpoint solving round-trips the energy and separation identity",
        find(first, "bvp-round-trip")));

    {
        const auto& n2 = find(first, "hierarchy-n2-reduces-to-quartic");
        const auto& n1 = find(first, "hierarchy-n1-matches-harmonic");
        const auto& orc = find(first, "hierarchy-action-vs-ode-oracle");
        const auto& coef = find(first, "hierarchy-energy-coefficient");
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "even-power family: n=2 reduction (%s), n=1 harmonic "
                      "limit (%s), oracle (%s), energy-term coefficient (%s)",
                      residual_clause(n2).c_str(), residual_clause(n1).c_str(),
                      residual_clause(orc).c_str(),
                      residual_clause(coef).c_str());
        tally(emit(6, n2.passed && n1.passed && orc.passed && coef.passed, buf));
    }

    tally(plain_criterion(
        7, "reconstructed trajectory tracks the ODE oracle over a period",
        find(first, "trajectory-vs-ode-oracle")));
    tally(plain_criterion(
        8, "degenerate inputs are rejected, crossing endpoints stay finite",
        find(first, "degenerate-input-handling")));

    {
        double total = 0.0;
        for (const auto& p : first) total += p.seconds;
        const auto second = qo::verify::run_all(opts);
        bool identical = second.size() == first.size();
        for (std::size_t i = 0; identical && i < first.size(); ++i) {
            identical = first[i].name == second[i].name &&
                        first[i].cases == second[i].cases &&
                        first[i].worst == second[i].worst &&
                        first[i].passed == second[i].passed &&
                        first[i].detail == second[i].detail;
        }
        char buf[240];
        std::snprintf(buf, sizeof buf,
                      "full suite in budget and deterministic under the fixed "
                      "seed (%.1f s, budget 180 s; repeat run %s)",
                      total, identical ? "identical" : "DIVERGED");
        tally(emit(9, total < 180.0 && identical, buf));
    }

    std::printf("acceptance: %d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
