#pragma once

#include "tanlift/poisson.hpp"

#include <string>
#include <vector>

namespace tanlift {

// ---------------------------------------------------------------------------
// Lie algebras by structure constants
// ---------------------------------------------------------------------------

/// Finite-dimensional Lie algebra over the rationals: [e_i, e_j] =
/// sum_k c[i][j][k] e_k on a named basis.
struct LieAlgebra {
    std::vector<std::string> names;
    Cubic c;

    [[nodiscard]] int dim() const { return static_cast<int>(names.size()); }
};

/// Antisymmetry and Jacobi for a constants array.
[[nodiscard]] bool lie_axioms(int n, const Cubic& c);

/// Throws EngineError unless the constants satisfy the Lie axioms.
[[nodiscard]] LieAlgebra make_lie_algebra(std::vector<std::string> names, Cubic c);

/// Chart whose coordinates are the basis names.
[[nodiscard]] ChartPtr algebra_chart(const LieAlgebra& g, const std::string& chart_name);

/// The double-dimensional algebra on basis (e_i dotted, e_i hatted):
/// [dot,dot] = dot of the bracket, [dot,hat] = hat of the bracket,
/// [hat,hat] = 0. Equals the semidirect product of g acting on itself.
[[nodiscard]] LieAlgebra tangent_lie_algebra(const LieAlgebra& g);

// ---------------------------------------------------------------------------
// Cobrackets and bialgebras
// ---------------------------------------------------------------------------

/// Cobracket delta(e_k) = sum_{i<j} d[i][j][k] e_i ^ e_j on a Lie algebra,
/// d antisymmetric in its first two indices.
struct Cobracket {
    LieAlgebra g;
    Cubic d;
};

/// Throws EngineError when d is not antisymmetric in (i,j).
[[nodiscard]] Cobracket make_cobracket(LieAlgebra g, Cubic d);

/// delta([x,y]) = ad_x delta(y) - ad_y delta(x), coefficientwise.
[[nodiscard]] bool cocycle_check(int n, const Cubic& c, const Cubic& d);

/// Four verdicts: the cocycle condition, the dual Jacobi identity, the
/// role-swapped cocycle condition, and the Jacobi identity routed through
/// the induced linear bivector. Route pairs that are theorems of each other
/// are cross-checked; disagreement throws EngineError.
struct BialgebraVerdict {
    bool cocycle;
    bool cojacobi;
    bool dual_cocycle;
    bool poisson_route;
};

[[nodiscard]] BialgebraVerdict bialgebra_verdict(const Cobracket& cb);

/// cocycle && cojacobi, with the internal cross-checks of bialgebra_verdict.
[[nodiscard]] bool validate_bialgebra(const Cobracket& cb);

/// The Lie algebra on the dual basis with [f^i, f^j] = sum_k d[i][j][k] f^k;
/// throws unless the axioms hold.
[[nodiscard]] LieAlgebra dual_algebra(const Cobracket& cb, std::vector<std::string> dual_names);

/// The cobracket extended to a linear bivector on the chart of basis names.
[[nodiscard]] Multivector linear_poisson_of(const Cobracket& cb, const std::string& chart_name);

/// Cobracket of the tangent algebra, read off the lifted linear bivector.
[[nodiscard]] Cobracket tangent_cobracket(const Cobracket& cb);

// ---------------------------------------------------------------------------
// r-matrices
// ---------------------------------------------------------------------------

/// Element of the second exterior power as an antisymmetric rational matrix.
[[nodiscard]] Mat rmatrix_zero(int n);

/// The algebraic bracket [r, r], a totally antisymmetric constants array.
/// Computed through a pointed realization of the algebra by vector fields
/// (first-order faithful at the origin) and the field-level bracket.
// Algebraic Schouten bracket [r1,r2] in /\^3 g, fully antisymmetric layout.
// Authoritative route expands decomposables by the graded Leibniz rule;
// a realization through pointed vector fields cross-checks every call.
[[nodiscard]] Cubic algebraic_schouten(const LieAlgebra& g, const Mat& r1, const Mat& r2);
[[nodiscard]] Cubic algebraic_schouten(const LieAlgebra& g, const Mat& r);

/// ad_X [r,r] = 0 for every basis X.
[[nodiscard]] bool gybe_check(const LieAlgebra& g, const Mat& r);

/// delta(e_k) = [e_k, r] = ad_{e_k} r.
[[nodiscard]] Cobracket coboundary_cobracket(const LieAlgebra& g, const Mat& r);

/// The lifted element on the tangent algebra, pairing each dotted basis
/// vector against each hatted one with the original coefficients.
[[nodiscard]] Mat lift_rmatrix(const LieAlgebra& g, const Mat& r);

}  // namespace tanlift
