#pragma once

#include <cmath>
#include <utility>

#include "qo/errors.hpp"

namespace qo::quad {

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule. Nodes and weights
// for [-1, 1]; the even-index nodes are Kronrod-only, the odd-index ones are
// the embedded Gauss points.
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

struct Estimate {
    double value;
    double error;
};

template <class F>
Estimate gk15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(mid);
    double result_gauss = kGaussWeights[3] * fc;
    double result_kronrod = kKronrodWeights[7] * fc;
    double resabs = kKronrodWeights[7] * std::fabs(fc);

    double f_lo[7], f_hi[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        f_lo[j] = f(mid - dx);
        f_hi[j] = f(mid + dx);
        const double sum = f_lo[j] + f_hi[j];
        result_kronrod += kKronrodWeights[j] * sum;
        resabs += kKronrodWeights[j] * (std::fabs(f_lo[j]) + std::fabs(f_hi[j]));
        if (j % 2 == 1) result_gauss += kGaussWeights[j / 2] * sum;
    }

    // Error scaling in the style of classic automatic integrators: compare
    // against the deviation integral so the estimate stays meaningful when
    // the integrand is nearly constant.
    const double mean = result_kronrod * 0.5;
    double resasc = kKronrodWeights[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kKronrodWeights[j] *
                  (std::fabs(f_lo[j] - mean) + std::fabs(f_hi[j] - mean));
    }
    resasc *= std::fabs(half);

    const double value = result_kronrod * half;
    double err = std::fabs((result_kronrod - result_gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        const double scaled = std::pow(200.0 * err / resasc, 1.5);
        err = resasc * (scaled < 1.0 ? scaled : 1.0);
    }
    (void)resabs;
    return {value, err};
}

template <class F>
double refine(const F& f, double a, double b, const Estimate& est, double target,
              double width_floor, int depth) {
    if (!std::isfinite(est.value))
        throw QuadratureError("quadrature produced a non-finite value");
    if (est.error <= target || std::fabs(b - a) <= width_floor || depth >= 48)
        return est.value;
    const double mid = 0.5 * (a + b);
    const Estimate left = gk15(f, a, mid);
    const Estimate right = gk15(f, mid, b);
    return refine(f, a, mid, left, 0.5 * target, width_floor, depth + 1) +
           refine(f, mid, b, right, 0.5 * target, width_floor, depth + 1);
}

}  // namespace detail

// Deterministic adaptive integral of f over [a, b]. The tolerance target is
// max(abs_floor, rel_tol * |first whole-interval estimate|), halved with each
// bisection. Intended for smooth integrands; singular kernels must be
// substituted smooth by the caller first.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-12,
                 double abs_floor = 0.0) {
    if (a == b) return 0.0;
    const detail::Estimate whole = detail::gk15(f, a, b);
    if (!std::isfinite(whole.value))
        throw QuadratureError("quadrature produced a non-finite value");
    double target = rel_tol * std::fabs(whole.value);
    if (abs_floor > target) target = abs_floor;
    if (target <= 0.0) target = 1e-300;
    const double width_floor = std::fabs(b - a) * 1e-13;
    return detail::refine(f, a, b, whole, target, width_floor, 0);
}

}  // namespace qo::quad
