#pragma once

#include "tanlift/linalg.hpp"
#include "tanlift/rng.hpp"
#include "tanlift/tangent.hpp"

#include <map>
#include <string>
#include <vector>

namespace tanlift {

// ============================= numeric points ==============================

/// Numeric point of a chart: one value per symbol (coordinates then
/// parameters).
struct BasePt {
    ChartPtr chart;
    Vec vals;
};

BasePt make_base_pt(ChartPtr chart, Vec vals);
[[nodiscard]] bool same_base_pt(const BasePt& a, const BasePt& b);
[[nodiscard]] Rat eval_at(const Scalar& f, const BasePt& b);

/// Fiber of an exterior power at a point: nonzero components on strict
/// increasing multiindices.
using FiberComps = std::map<MultiIndex, Rat>;

/// Adds c on the (possibly unsorted) index, normalizing sign and dropping
/// zero results.
void comp_put(FiberComps& m, MultiIndex idx, const Rat& c);
[[nodiscard]] FiberComps comp_add(FiberComps a, const FiberComps& b);
[[nodiscard]] FiberComps comp_scale(FiberComps a, const Rat& c);
[[nodiscard]] FiberComps comp_wedge(const FiberComps& a, const FiberComps& b);

/// Point of the r-th exterior power of the tangent bundle over b.chart.
struct MvPt {
    BasePt b;
    int r = 0;
    FiberComps w;
};

/// Point of the r-th exterior power of the cotangent bundle.
struct FormPt {
    BasePt b;
    int r = 0;
    FiberComps p;
};

/// Tangent vector of the multivector bundle: foot point plus a velocity,
/// split into base part (one entry per coordinate) and fiber part.
struct TMvPt {
    MvPt pt;
    Vec dx;
    FiberComps dw;
};

struct TFormPt {
    FormPt pt;
    Vec dx;
    FiberComps dp;
};

[[nodiscard]] bool eq(const MvPt& a, const MvPt& b);
[[nodiscard]] bool eq(const FormPt& a, const FormPt& b);
[[nodiscard]] bool eq(const TMvPt& a, const TMvPt& b);
[[nodiscard]] bool eq(const TFormPt& a, const TFormPt& b);

[[nodiscard]] std::string str(const MvPt& u);
[[nodiscard]] std::string str(const FormPt& a);
[[nodiscard]] std::string str(const TMvPt& v);
[[nodiscard]] std::string str(const TFormPt& z);

/// Fiberwise wedge over a common foot point.
[[nodiscard]] MvPt wedge(const MvPt& a, const MvPt& b);
[[nodiscard]] FormPt wedge(const FormPt& a, const FormPt& b);

/// Tangent-functor wedge: common foot point and base velocity, Leibniz on
/// the fiber velocities.
[[nodiscard]] TMvPt t_wedge(const TMvPt& a, const TMvPt& b);
[[nodiscard]] TFormPt t_wedge(const TFormPt& a, const TFormPt& b);

/// <a, u> for equal degrees over the same foot point.
[[nodiscard]] Rat pairing(const FormPt& a, const MvPt& u);

/// Tangent pairing of tangent vectors over matching foot points and base
/// velocities: sum over J of dp_J w^J + p_J dw^J.
[[nodiscard]] Rat tangent_pairing(const TFormPt& z, const TMvPt& v);

/// Evaluate a symbolic tensor at a numeric point of its chart.
[[nodiscard]] MvPt eval_mv(const Multivector& X, const BasePt& b);
[[nodiscard]] FormPt eval_form(const Form& mu, const BasePt& b);

/// Numeric interior products at a point: i_u mu and i_a X.
[[nodiscard]] FormPt contract_at(const Form& mu, const MvPt& u);
[[nodiscard]] MvPt contract_at(const Multivector& X, const FormPt& a);

[[nodiscard]] BasePt random_base_pt(const ChartPtr& chart, Rng& rng);
[[nodiscard]] MvPt random_mv_pt(const ChartPtr& chart, int r, Rng& rng);
[[nodiscard]] FormPt random_form_pt(const ChartPtr& chart, int r, Rng& rng);
[[nodiscard]] TMvPt random_tmv_pt(const ChartPtr& chart, int r, Rng& rng);
[[nodiscard]] TFormPt random_tform_pt(const ChartPtr& chart, int r, Rng& rng);

// ============================= canonical maps ==============================
//
// A point of the r-th tangent power over a tangent chart (coordinates x then
// x_dot) decomposes by how many of its indices are dotted. The graded
// canonical flip exchanges that picture with a tangent vector of the r-th
// power over the base:
//   base point     x             <- x part of the foot
//   base velocity  x_dot         <- dotted part of the foot
//   fiber point    w^J           <- components with no dotted index
//   fiber velocity dw^L          <- signed components with one dotted index,
//                                   (-1)^{r-m} for the dotted slot at
//                                   position m (1-based) of L.
// Components with two or more dotted indices are annihilated, so the flip
// is invertible only at r = 1 (where it is a classical involution); the
// duals below are injective and carry the diagram checks at higher degree.

/// Graded tangent flip: point of the r-th tangent power of TM -> tangent
/// vector of the r-th tangent power of M.
[[nodiscard]] TMvPt kappa_r(const MvPt& u);

/// Cotangent counterpart: point of the r-th cotangent power of TM ->
/// tangent vector of the r-th cotangent power of M. The one-dotted-index
/// sign is (-1)^{m-1} for the dotted slot at position m of the merged index.
[[nodiscard]] TFormPt eps_r(const FormPt& a);

/// Dual of kappa_r with respect to the pairings: tangent vector of the r-th
/// cotangent power of M -> point of the r-th cotangent power of TM,
/// characterized by tangent_pairing(z, kappa_r(u)) = pairing(dual(z), u).
[[nodiscard]] FormPt kappa_r_dual(const TFormPt& z);

/// Dual of eps_r: tangent vector of the r-th tangent power of M -> point of
/// the r-th tangent power of TM, pairing(eps_r(a), v)' = pairing(a, dual(v)).
[[nodiscard]] MvPt eps_r_dual(const TMvPt& v);

/// r = 1 identification: a tangent vector of TM as a point of the iterated
/// tangent chart and back.
[[nodiscard]] MvPt as_iterated_point(const TMvPt& v);
[[nodiscard]] TMvPt as_tangent_of_tangent(const MvPt& u);

/// Classical degree-one maps written directly from their coordinate form,
/// used to cross-check the graded ones: (x, p, x_dot, p_dot) |-> covector
/// (p_dot, p) at (x, x_dot), and its inverse.
[[nodiscard]] FormPt alpha_classic(const TFormPt& z);
[[nodiscard]] TFormPt eps_classic(const FormPt& a);

// ============================ fibered charts ===============================

/// A full exterior-power bundle with the fiber flattened into chart
/// coordinates: base coordinates first, then one fiber coordinate per strict
/// multiindex in lexicographic order. Parameters carry over.
struct FiberBundle {
    ChartPtr flat;
    ChartPtr base;
    int r = 0;
    std::vector<MultiIndex> idxs;
    std::map<MultiIndex, int> pos;  // multiindex -> flat coordinate slot
};

/// Tangent-power bundle; fiber coordinates w_<names>. Degree 1 reuses the
/// tangent chart of m so degree-one bundle maps act on TM itself.
[[nodiscard]] FiberBundle mv_bundle(const ChartPtr& m, int r);

/// Cotangent-power bundle; fiber coordinates p_<names>. Degree 1 flattens to
/// the cotangent chart (x..., p_<x>...).
[[nodiscard]] FiberBundle form_bundle(const ChartPtr& m, int r);

/// Chart of the cotangent bundle: coordinates x..., p_<x>...
[[nodiscard]] ChartPtr cotangent_chart(const ChartPtr& m);

[[nodiscard]] Vec flatten(const FiberBundle& fb, const MvPt& u);
[[nodiscard]] Vec flatten(const FiberBundle& fb, const FormPt& a);
[[nodiscard]] MvPt unflatten_mv(const FiberBundle& fb, const Vec& v);
[[nodiscard]] FormPt unflatten_form(const FiberBundle& fb, const Vec& v);

/// Numeric point with velocity over a flat chart; pt spans the full symbol
/// table, vel spans coordinates only (parameters are frozen).
struct TPt {
    Vec pt;
    Vec vel;
};

[[nodiscard]] TPt flatten(const FiberBundle& fb, const TMvPt& v);
[[nodiscard]] TPt flatten(const FiberBundle& fb, const TFormPt& z);
[[nodiscard]] TMvPt unflatten_tmv(const FiberBundle& fb, const TPt& v);
[[nodiscard]] TFormPt unflatten_tform(const FiberBundle& fb, const TPt& v);

// ======================== maps and their tangents ==========================

/// phi at a numeric point (full symbol vector of phi.src); returns the full
/// symbol vector of phi.dst, parameters copied over by name.
[[nodiscard]] Vec eval_map(const PolyMap& phi, const Vec& at);

/// Tangent functor applied numerically: (point, velocity) -> (image,
/// Jacobian times velocity).
[[nodiscard]] TPt t_apply(const PolyMap& phi, const TPt& v);

/// g after f.
[[nodiscard]] PolyMap compose(const PolyMap& g, const PolyMap& f);

/// T(phi) as a polynomial map between tangent charts.
[[nodiscard]] PolyMap tangent_poly_map(const PolyMap& phi);

/// Cotangent functor numerically: a covector xi at phi(at) pulled back to a
/// covector at the known source point, (phi^* xi)_i = xi_a dphi^a/ds^i.
[[nodiscard]] FormPt pullback_covector(const PolyMap& phi, const FormPt& xi, const BasePt& at);

/// The contraction maps of a fixed tensor as polynomial bundle maps:
/// an r-form mu yields degree-i tangent power -> degree-(r-i) cotangent
/// power, u |-> i_u mu; an r-vector X yields the mirror image.
[[nodiscard]] PolyMap tilde_form_map(const Form& mu, int i);
[[nodiscard]] PolyMap tilde_mv_map(const Multivector& X, int i);

/// Exterior power of the tangent map of phi as a polynomial bundle map:
/// base point through phi, fiber through Jacobian minors.
[[nodiscard]] PolyMap wedge_tangent_map(const PolyMap& phi, int r);

/// Exterior power of the fiber derivative of psi at the foot of u, applied
/// to u's fiber; the foot moves through psi.
[[nodiscard]] MvPt wedge_jacobian_apply(const PolyMap& psi, const MvPt& u);

// ===================== tautological and canonical forms ====================

/// Tautological k-form on the flattened k-th cotangent power: sum over
/// strict J of p_J dx^J. For k = 0 the fiber coordinate itself.
[[nodiscard]] Form liouville_form(const ChartPtr& m, int k);

/// d of the degree-one tautological form, on the cotangent chart.
[[nodiscard]] Form canonical_symplectic(const ChartPtr& m);

/// The bivector sum over i of @x^i ^ @p_i on the cotangent chart.
[[nodiscard]] Multivector canonical_poisson(const ChartPtr& m);

// ============================ property checks ==============================

struct CheckResult {
    bool ok = true;
    std::string witness;
};

/// The degree-one flip on the iterated tangent chart is an involution.
[[nodiscard]] CheckResult check_flip_involution(const ChartPtr& m, Rng& rng, int trials);

/// Degree-one classical maps: eps inverts alpha both ways, the graded maps
/// restrict to them at r = 1, and the two duality identities
///   tangent_pairing(z, kappa_r(u))  = pairing(kappa_r_dual(z), u)
///   tangent_pairing(eps_r(a), v)    = pairing(a, eps_r_dual(v))
/// hold at random points for 1 <= r <= 3.
[[nodiscard]] CheckResult check_flip_duality(const ChartPtr& m, Rng& rng, int trials);

/// Wedge compatibility of the tangent flip: on split degrees (i, j),
/// kappa_{i+j}(u ^ v) = t_wedge(kappa_i(u), kappa_j(v)) whenever the factors
/// share base velocity data, and the r-fold decomposable version. i = 0 and
/// j = 0 exercise the scalar edge of the flip.
[[nodiscard]] CheckResult check_flip_wedge(const ChartPtr& m, int i, int j, Rng& rng, int trials);

/// Same for the cotangent flip.
[[nodiscard]] CheckResult check_cotangent_flip_wedge(const ChartPtr& m, int i, int j, Rng& rng,
                                                     int trials);

/// Naturality of the flip in the map phi: flipping after the iterated
/// tangent of phi equals the tangent of the exterior-power map after
/// flipping, at random points of the r-th power over the source tangent
/// chart.
[[nodiscard]] CheckResult check_flip_naturality(const PolyMap& phi, int r, Rng& rng, int trials);

/// The i-th facet of the lift of an r-form mu: contracting d_T mu with a
/// degree-i point over the tangent chart agrees with the flip-conjugated
/// tangent of the contraction map of mu.
[[nodiscard]] CheckResult check_lift_form_facet(const Form& mu, int i, Rng& rng, int trials);

/// Mirror statement for the lift of an r-vector through the cotangent flip.
[[nodiscard]] CheckResult check_lift_mv_facet(const Multivector& X, int i, Rng& rng, int trials);

/// i_T mu equals the pullback of the tautological (r-1)-form along the
/// degree-one contraction map of mu; fully symbolic.
[[nodiscard]] CheckResult check_iota_tautological(const Form& mu);

/// d_T mu equals the pullback of the canonical 2-form along the degree-one
/// contraction map of mu exactly when mu is closed; fully symbolic, checked
/// against exterior_d(mu).
[[nodiscard]] CheckResult check_lift_symplectic_pullback(const Form& mu);

/// For nu the degree-one contraction map of a 2-form omega: the flip
/// conjugate of T nu equals the relational composite (cotangent lift of nu)
/// after the canonical-2-form contraction after T nu, at every tangent
/// vector, exactly when omega is closed. ok reports "held at all sampled
/// points".
[[nodiscard]] CheckResult check_two_form_diagram(const Form& omega, Rng& rng, int trials);

struct RelationResult {
    bool forward = true;
    bool fiber_independent = true;
    std::string witness;
};

/// For lambda the degree-one contraction map of a bivector P: the composite
/// T lambda after the canonical-bivector contraction after the cotangent
/// lift of lambda is a relation from covectors on TM to tangent vectors of
/// TM; forward = the flip-conjugated route reproduces it at sampled points,
/// fiber_independent = the value does not move along the kernel of P at the
/// sampled base points.
[[nodiscard]] RelationResult check_bivector_relation(const Multivector& P, Rng& rng, int trials);

}  // namespace tanlift
