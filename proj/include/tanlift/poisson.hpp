#pragma once

#include "tanlift/canonical.hpp"
#include "tanlift/linalg.hpp"
#include "tanlift/tangent.hpp"

#include <string>
#include <vector>

namespace tanlift {

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// Jacobi defect of a bivector as a trivector: component {i<j<k} is the
/// cyclic sum over (i,j,k) of sum_l A^{il} d_l A^{jk}, where A is the signed
/// component matrix. Zero exactly when the induced bracket satisfies Jacobi.
[[nodiscard]] Multivector jacobi_cyclic(const Multivector& biv);

/// Two independent verdicts on the Jacobi identity: the cyclic component
/// identity and the vanishing of the self-bracket. The constructor of every
/// consumer relies on the two always agreeing; check() throws EngineError
/// when they do not.
struct JacobiVerdict {
    bool cyclic_ok;
    bool schouten_ok;
    Multivector cyclic_defect;
    Multivector self_bracket;
};

[[nodiscard]] JacobiVerdict jacobi_verdict(const Multivector& biv);

/// True when the bivector is Poisson; routes cross-checked internally.
[[nodiscard]] bool is_poisson(const Multivector& biv);

/// Returns the argument unchanged, throwing EngineError when it is not a
/// Poisson bivector.
const Multivector& require_poisson(const Multivector& biv);

// ---------------------------------------------------------------------------
// Brackets and fields
// ---------------------------------------------------------------------------

/// {f,g} = <biv, df ^ dg>.
[[nodiscard]] Scalar poisson_bracket(const Multivector& biv, const Scalar& f, const Scalar& g);

/// The vector field i_{df} biv; its directional derivative of g is {f,g}.
[[nodiscard]] Multivector hamiltonian_field(const Multivector& biv, const Scalar& f);

/// Bracket of 1-forms: d<biv, mu^eta> + i_{biv mu} d eta - i_{biv eta} d mu.
[[nodiscard]] Form one_form_bracket(const Multivector& biv, const Form& mu, const Form& eta);

/// The same bracket through Lie derivatives along the contracted fields:
/// $_{biv mu} eta - $_{biv eta} mu - d<biv, mu^eta>. Kept as an independent
/// route; agrees with one_form_bracket identically.
[[nodiscard]] Form one_form_bracket_lie(const Multivector& biv, const Form& mu, const Form& eta);

/// True when the hamiltonian field of f vanishes.
[[nodiscard]] bool is_casimir(const Multivector& biv, const Scalar& f);

// ---------------------------------------------------------------------------
// Tangent structure
// ---------------------------------------------------------------------------

/// The lifted bivector on TM (input validated, output re-validated).
[[nodiscard]] Multivector tangent_poisson(const Multivector& biv);

/// Structural shape of a lifted bivector: plain/plain components vanish,
/// plain/dotted components carry no dotted variables, dotted/dotted
/// components are homogeneous of degree one in the dotted variables. This is
/// linearity over the vector bundle projection TM -> M.
[[nodiscard]] bool is_linear_tangent_bivector(const Multivector& biv);

/// Rank of the component matrix at a point (full symbol-table coordinates).
[[nodiscard]] int rank_at(const Multivector& biv, const Vec& pt);

/// First-order part at a point whose entries are scalars in the chart
/// parameters only. Lives on a fresh chart whose coordinates are the dotted
/// names, parameters carried over; component {i<j} is
/// sum_k (d A^{ij}/dx^k at the point) * v^k.
[[nodiscard]] Multivector linearize_at(const Multivector& biv, const std::vector<Scalar>& pt);

// ---------------------------------------------------------------------------
// Field and map checks
// ---------------------------------------------------------------------------

/// Whether X preserves the bivector, decided along two routes (the bracket
/// [X, biv] and the section pullback of the lifted bivector); throws
/// EngineError when the routes disagree.
[[nodiscard]] CheckResult canonical_field_check(const Multivector& X, const Multivector& biv);

/// The section-image criterion: for all coordinate pairs the pairing
/// <X_* dx^j, (lift biv)~(X_* dx^i)> vanishes after restriction to the
/// section. Equivalent to canonical_field_check.
[[nodiscard]] bool lagrangian_section_check(const Multivector& X, const Multivector& biv);

/// phi intertwines the two bivectors (componentwise Jacobian identity).
[[nodiscard]] bool poisson_map_check(const PolyMap& phi, const Multivector& src_biv,
                                     const Multivector& dst_biv, std::string* witness = nullptr);

/// The fiber morphism of biv intertwines the canonical cotangent bivector
/// with the lifted bivector; holds exactly for Poisson bivectors.
[[nodiscard]] bool anchor_related_check(const Multivector& biv, std::string* witness = nullptr);

// ---------------------------------------------------------------------------
// Bracket relations on lifts
// ---------------------------------------------------------------------------

/// The three bracket relations of the lifted structure against a pair of
/// functions on the base: complete/complete lifts bracket to the complete
/// lift of {f,g}, complete/vertical to the vertical lift, vertical/vertical
/// to zero.
[[nodiscard]] bool tangent_bracket_relations(const Multivector& biv, const Scalar& f,
                                             const Scalar& g);

/// Fiber-linear coordinates from 1-forms: {xi(mu), xi(eta)} of the lifted
/// structure equals xi of the 1-form bracket.
[[nodiscard]] bool xi_bracket_formula(const Multivector& biv, const Form& mu, const Form& eta);

/// Contractions of lifted 1-forms into the lifted bivector reproduce the
/// vertical and complete lifts of the contracted field.
[[nodiscard]] bool characteristic_lift_check(const Multivector& biv, const Form& mu);

// ---------------------------------------------------------------------------
// Linear structures
// ---------------------------------------------------------------------------

/// Constants of a fiberwise-linear morphism T*V -> TV over a vector space V:
/// b[i][m][k] is the coefficient of v^k a_m in the i-th output component.
using Cubic = std::vector<std::vector<std::vector<Rat>>>;

[[nodiscard]] Cubic cubic_zero(int n);

/// Reads the constants off a bivector with homogeneous linear components.
[[nodiscard]] Cubic cubic_from_linear_bivector(const Multivector& biv);

/// Builds the linear bivector (1/2) b[i][m][k] x^k e_i ^ e_m on the chart;
/// requires b antisymmetric in (i,m).
[[nodiscard]] Multivector linear_bivector_from(const ChartPtr& m, const Cubic& b);

/// The two closure conditions on a fiberwise-linear morphism and the Lie
/// axioms of the induced dual-space bracket; the conjunction of the first
/// two is equivalent to the conjunction of the last two.
struct LinearMorphismVerdict {
    bool antisym;        // lambda(v,b) = -lambda^*(v,b)
    bool transfer;       // lambda(v, *lambda(b,a)) = lambda(lambda(v,a),b) - lambda(lambda(v,b),a)
    bool dual_antisym;   // induced bracket on V* antisymmetric
    bool dual_jacobi;    // induced bracket on V* satisfies Jacobi
};

[[nodiscard]] LinearMorphismVerdict linear_morphism_check(int n, const Cubic& b);

}  // namespace tanlift
