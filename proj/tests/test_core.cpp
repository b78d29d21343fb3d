#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "qo/detail/parallel.hpp"
#include "qo/types.hpp"

using namespace qo;

TEST_CASE("parameter validation rejects non-physical values") {
    CHECK_THROWS_AS(OscillatorParams(0.0, 1.0), DegenerateInputError);
    CHECK_THROWS_AS(OscillatorParams(-1.0, 1.0), DegenerateInputError);
    CHECK_THROWS_AS(OscillatorParams(1.0, 0.0), DegenerateInputError);
    CHECK_THROWS_AS(OscillatorParams(std::numeric_limits<double>::quiet_NaN(), 1.0),
                    DegenerateInputError);
    CHECK_THROWS_AS(OscillatorParams(1.0, std::numeric_limits<double>::infinity()),
                    DegenerateInputError);

    CHECK_THROWS_AS(HierarchyParams(0, 1.0, 1.0), DegenerateInputError);
    CHECK_THROWS_AS(HierarchyParams(-3, 1.0, 1.0), DegenerateInputError);
    CHECK_NOTHROW(HierarchyParams(1, 1.0, 1.0));
    CHECK_NOTHROW(HierarchyParams(7, 0.5, 2.0));
}

TEST_CASE("the rest solution has no chart") {
    const OscillatorParams p(1.0, 1.0);
    CHECK_THROWS_AS(ExtremalChart(p, 0.0), DegenerateInputError);
    CHECK_THROWS_AS(ExtremalChart(p, -2.0), DegenerateInputError);
    CHECK_THROWS_AS(HierarchyChart(HierarchyParams(3, 1.0, 1.0), 0.0),
                    DegenerateInputError);
    CHECK_NOTHROW(ExtremalChart(p, 1e-12));
}

TEST_CASE("boundary data must be time ordered") {
    CHECK_THROWS_AS(BoundaryData(SpacetimePoint(1.0, 0.0), SpacetimePoint(1.0, 0.5)),
                    DegenerateInputError);
    CHECK_THROWS_AS(BoundaryData(SpacetimePoint(2.0, 0.0), SpacetimePoint(1.0, 0.5)),
                    DegenerateInputError);
    CHECK_NOTHROW(BoundaryData(SpacetimePoint(0.0, 0.0), SpacetimePoint(1e-9, 0.5)));
}

TEST_CASE("branch selector validation") {
    CHECK_THROWS_AS(BranchSelector(-1), DegenerateInputError);
    const BranchSelector b(3, false);
    CHECK(b.crossings == 3);
    CHECK_FALSE(b.rising_at_a);
    CHECK(BranchSelector().rising_at_a);
}

TEST_CASE("phase points carry p = m v") {
    const PhasePoint pt(0.5, 1.0, -2.0, 3.0);
    CHECK(pt.p == -6.0);
}

TEST_CASE("amplitude closes the energy balance") {
    // V(A) = E exactly: k4 A^4 / 4 = E.
    const ExtremalChart unit(OscillatorParams(1.0, 4.0), 1.0);
    CHECK(amplitude(unit) == doctest::Approx(1.0).epsilon(1e-15));

    const ExtremalChart heavy(OscillatorParams(2.0, 1.0), 1.0);
    CHECK(amplitude(heavy) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    const ExtremalChart generic(OscillatorParams(0.7, 2.3), 5.1);
    const double a = amplitude(generic);
    CHECK(generic.params.k4 * std::pow(a, 4) / 4.0 ==
          doctest::Approx(generic.E).epsilon(1e-14));
}

TEST_CASE("thread budget: explicit request beats env, env beats the default") {
    CHECK(detail::thread_budget(3) == 3);
    CHECK(detail::thread_budget(1000) == 64);

    setenv("QO_ACTION_THREADS", "2", 1);
    CHECK(detail::thread_budget() == 2);
    CHECK(detail::thread_budget(5) == 5);

    // Unusable values fall through to the small default.
    for (const char* bogus : {"0", "-3", "junk"}) {
        setenv("QO_ACTION_THREADS", bogus, 1);
        const int v = detail::thread_budget();
        CHECK(v >= 1);
        CHECK(v <= 4);
    }
    unsetenv("QO_ACTION_THREADS");
    const int v = detail::thread_budget();
    CHECK(v >= 1);
    CHECK(v <= 4);
}

TEST_CASE("parallel_for touches every index once and rethrows") {
    std::vector<int> hits(101, 0);
    detail::parallel_for(101, 4, [&](int i) { hits[static_cast<std::size_t>(i)] += 1; });
    for (const int h : hits) CHECK(h == 1);

    detail::parallel_for(0, 4, [](int) { throw DegenerateInputError("unreachable"); });
    CHECK_THROWS_AS(detail::parallel_for(8, 3,
                                         [](int i) {
                                             if (i == 5)
                                                 throw DegenerateInputError("boom");
                                         }),
                    DegenerateInputError);
}
