#pragma once

#include "tanlift/cartan.hpp"

namespace tanlift {

/// f(x) viewed on TM (pullback along the projection).
Scalar vT_scalar(const ChartPtr& tm, const Scalar& f);

/// d_T f = sum_k (df/dx^k) x_dot^k.
Scalar dT_scalar(const ChartPtr& tm, const Scalar& f);

/// Pullback of a form along the projection TM -> M.
Form vT_form(const Form& mu);

/// Vertical lift: on degree 1 sends d/dx^i to d/dx_dot^i, extended as a
/// graded algebra homomorphism with pulled-back coefficients.
Multivector vT_mv(const Multivector& X);

/// Second-order field x_dot^k d/dx^k + f^k d/dx_dot^k on a tangent chart;
/// f entries (one per base coordinate) live on the tangent chart, empty
/// means the spray-free representative.
Multivector second_order_field(const ChartPtr& tm, std::vector<Scalar> f = {});

/// i_T mu = i_Gamma(v_T mu), independent of the second-order field Gamma;
/// degree 0 maps to 0.
Form iota_T(const Form& mu);
Form iota_T_with(const Form& mu, const Multivector& gamma);

/// Tangent lift of a form, degree preserved.
Form dT_form(const Form& mu);

/// Tangent lift of a multivector; on degree 1 the complete lift.
Multivector dT_mv(const Multivector& X);

/// The section map x |-> (x, X(x)) of TM as a polynomial map.
PolyMap section_of_field(const Multivector& X);

/// Substitutes x_dot := X(x); scalar on TM -> scalar on M.
Scalar restrict_to_section(const Multivector& X, const Scalar& f);

/// X^* on forms: ordinary pullback along the section map.
Form pullback_form_along_field(const Multivector& X, const Form& mu);

/// X^* on multivectors: restrict coefficients to the section, project
/// d/dx_dot^i -> d/dx^i and d/dx^j -> -(dX^k/dx^j) d/dx^k, extend as an
/// algebra homomorphism.
Multivector pullback_mv_along_field(const Multivector& X, const Multivector& Y);

/// X_+ mu = d_T mu - v_T($_X mu).
Form x_plus(const Multivector& X, const Form& mu);

/// X_* as the graded product of X_+ over 1-form factors with vertically
/// lifted coefficients; canonical only after restriction to the section.
Form x_star(const Multivector& X, const Form& mu);

}  // namespace tanlift
