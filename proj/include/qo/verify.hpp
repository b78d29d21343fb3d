#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qo/types.hpp"

namespace qo::verify {

// Outcome of one property suite. `worst` is the largest scaled residual
// observed; a suite passes when worst <= tolerance. Sub-checks carrying a
// tighter tolerance are folded in after rescaling to the headline one, so a
// single comparison stays meaningful. `detail` describes the worst offender.
struct PropertyResult {
    std::string name;
    int cases = 0;
    double tolerance = 0.0;
    double worst = 0.0;
    bool passed = true;
    double seconds = 0.0;
    std::string detail;
};

struct Options {
    std::uint64_t seed = 42;
    // Nominal scale: 50 keeps each suite at its default case count, other
    // values scale proportionally. 0 skips everything (empty report).
    int cases = 50;
    // When positive, replaces every suite tolerance (handy for probing
    // failure reporting end to end).
    double tol_override = 0.0;
    int threads = 0;  // 0: QO_ACTION_THREADS or a small default
};

// Deterministic uniforms: the standard 64-bit Mersenne Twister sequence is
// pinned by the standard, and the mapping to doubles is done here rather
// than through std::uniform_real_distribution (whose stream is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    double log_uniform(double lo, double hi);

    // Inclusive on both ends.
    int uniform_int(int lo, int hi);

    bool coin() { return (engine_() & 1u) != 0; }

private:
    std::mt19937_64 engine_;
};

// Random solved quartic segment: a chart plus an angular window [theta_a,
// theta_b] and the boundary data / branch selector it induces. `margin`
// keeps both endpoint angles away from the quarter-turn grid (so neither
// position nor momentum degenerates) and the separation away from whole
// half-turns.
struct Segment {
    OscillatorParams params{1.0, 1.0};
    ExtremalChart chart{OscillatorParams{1.0, 1.0}, 1.0};
    double theta_a = 0.0;
    double theta_b = 0.0;
    BoundaryData data{SpacetimePoint{0.0, 0.0}, SpacetimePoint{1.0, 0.0}};
    BranchSelector branch;
};

Segment random_segment(Rng& rng, double margin = 0.05);

// Same construction for a general even-power well.
struct HierarchySegment {
    HierarchyParams params{2, 1.0, 1.0};
    HierarchyChart chart{HierarchyParams{2, 1.0, 1.0}, 1.0};
    double theta_a = 0.0;
    double theta_b = 0.0;
    BoundaryData data{SpacetimePoint{0.0, 0.0}, SpacetimePoint{1.0, 0.0}};
    BranchSelector branch;
};

HierarchySegment random_h_segment(Rng& rng, int power, double margin = 0.05);

// Quarter period of the power-2n well from the Beta-function closed form,
// evaluated through tgamma. Independent of the quadrature-based engine.
double gamma_quarter_period(int power, double mass, double stiffness, double energy);

PropertyResult run_quarter_period(const Options& opts);
PropertyResult run_action_vs_oracle(const Options& opts);
PropertyResult run_hamilton_jacobi(const Options& opts);
PropertyResult run_form_equivalence(const Options& opts);
PropertyResult run_bvp_round_trip(const Options& opts);
PropertyResult run_hierarchy_n2(const Options& opts);
PropertyResult run_hierarchy_n1(const Options& opts);
PropertyResult run_hierarchy_oracle(const Options& opts);
PropertyResult run_hierarchy_coefficient(const Options& opts);
PropertyResult run_trajectory_fidelity(const Options& opts);
PropertyResult run_degenerate_handling(const Options& opts);

// Every suite, in a fixed order. Identical options give an identical report
// (timings aside) regardless of the thread count.
std::vector<PropertyResult> run_all(const Options& opts);

}  // namespace qo::verify
