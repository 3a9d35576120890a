#pragma once

#include "tanlift/tensor.hpp"

#include <string>
#include <vector>

namespace tanlift {

/// Exterior derivative; degree r -> r+1.
Form exterior_d(const Form& mu);

/// d of a function as a 1-form.
Form differential(const Scalar& f, const ChartPtr& chart);

/// Schouten-Nijenhuis bracket; degrees (p,q) -> p+q-1. On (1,1) the Lie
/// bracket, on (1,0) the directional derivative X(f), graded antisymmetric
/// with [A,B] = -(-1)^{(p-1)(q-1)}[B,A].
Multivector schouten(const Multivector& P, const Multivector& Q);

/// $_X P = [X, P] for a vector field X.
Multivector lie_derivative_mv(const Multivector& X, const Multivector& P);

/// $_X mu = i_X d mu + d i_X mu.
Form lie_derivative_form(const Multivector& X, const Form& mu);

/// Polynomial map between charts, one component per target coordinate;
/// parameters of the target must exist in the source table.
struct PolyMap {
    ChartPtr src;
    ChartPtr dst;
    std::vector<Scalar> comps;
};

PolyMap make_poly_map(ChartPtr src, ChartPtr dst, std::vector<Scalar> comps);

/// f |-> f o phi.
Scalar pullback_scalar(const PolyMap& phi, const Scalar& f);

/// Determinant of a small square matrix of scalars over the symbol table.
[[nodiscard]] Scalar poly_det(const std::vector<std::vector<Scalar>>& m, SymbolsPtr syms);

/// phi^* mu, fully symbolic.
Form pullback_form(const PolyMap& phi, const Form& mu);

/// Checks that P on the source is phi-related to Q on the target:
/// Lambda^r T(phi) o P = Q o phi componentwise (Jacobian minors against
/// composed components). Fills *witness with the first failing component
/// when provided.
bool multivector_related(const PolyMap& phi, const Multivector& P, const Multivector& Q,
                         std::string* witness = nullptr);

}  // namespace tanlift
