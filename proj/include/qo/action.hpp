#pragma once

#include "qo/bvp.hpp"
#include "qo/types.hpp"

namespace qo::action {

// Algebraically equivalent closed forms of the segment action.
//   Primary:            boundary terms anchored at the endpoint crossings,
//                       regular everywhere.
//   VariantMax:         boundary terms anchored at the turning angle nearest
//                       the segment midpoint; poles where an endpoint angle
//                       is a quarter period away from the anchor.
//   VariantMaxExpanded: the same anchor with the secant factor expanded
//                       through the anchored interpolation identity; same
//                       poles as VariantMax.
enum class ActionForm { Primary, VariantMax, VariantMaxExpanded };

// Abbreviated momentum path integral over the segment, evaluated in closed
// form (no quadrature).
double momentum_integral(const bvp::BvpSolution& sol);

// Full action breakdown for the requested form. VariantMax and
// VariantMaxExpanded throw PoleError within ~1e-8 of their poles.
ActionBreakdown evaluate(const bvp::BvpSolution& sol,
                         ActionForm form = ActionForm::Primary);

// The turning angle used as anchor by the variant forms: theta0 + pi/2 + k*pi
// with k chosen nearest the segment midpoint.
double turning_anchor(const bvp::BvpSolution& sol);

// First derivatives of the segment action with respect to its endpoint data:
//   dS/dy_b = p_b,  dS/dy_a = -p_a,  dS/dt_b = -H_b,  dS/dt_a = +H_a,
// with p = m v at the endpoints and H the conserved energy.
struct EndpointDerivatives {
    double p_a;
    double p_b;
    double H_a;
    double H_b;
};

EndpointDerivatives endpoint_derivatives(const bvp::BvpSolution& sol);

}  // namespace qo::action
