#include "tanlift/poisson.hpp"

#include <utility>

namespace tanlift {

namespace {

/// Signed component matrix entry A^{ij} of a bivector.
Scalar signed_comp(const Multivector& biv, int i, int j) {
    if (i == j) return biv.chart()->zero();
    if (i < j) return biv.comp({i, j});
    return -biv.comp({j, i});
}

void require_bivector(const Multivector& biv, const char* who) {
    if (biv.degree() != 2) throw EngineError(std::string(who) + ": needs a bivector");
}

}  // namespace

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

Multivector jacobi_cyclic(const Multivector& biv) {
    require_bivector(biv, "jacobi_cyclic");
    const ChartPtr& m = biv.chart();
    const int n = m->dim();
    Multivector out = Multivector::zero(m, 3);
    for (const MultiIndex& ijk : all_multiindices(n, 3)) {
        const int i = ijk[0], j = ijk[1], k = ijk[2];
        Scalar acc = m->zero();
        for (int l = 0; l < n; ++l) {
            acc += signed_comp(biv, i, l) * signed_comp(biv, j, k).partial(l);
            acc += signed_comp(biv, j, l) * signed_comp(biv, k, i).partial(l);
            acc += signed_comp(biv, k, l) * signed_comp(biv, i, j).partial(l);
        }
        out.add_term(ijk, acc);
    }
    return out;
}

JacobiVerdict jacobi_verdict(const Multivector& biv) {
    require_bivector(biv, "jacobi_verdict");
    JacobiVerdict v{false, false, jacobi_cyclic(biv), schouten(biv, biv)};
    v.cyclic_ok = v.cyclic_defect.is_zero();
    v.schouten_ok = v.self_bracket.is_zero();
    if (v.cyclic_ok != v.schouten_ok)
        throw EngineError("jacobi_verdict: component route and bracket route disagree");
    return v;
}

bool is_poisson(const Multivector& biv) { return jacobi_verdict(biv).cyclic_ok; }

const Multivector& require_poisson(const Multivector& biv) {
    if (!is_poisson(biv)) throw EngineError("require_poisson: Jacobi identity fails");
    return biv;
}

// ---------------------------------------------------------------------------
// Brackets and fields
// ---------------------------------------------------------------------------

Scalar poisson_bracket(const Multivector& biv, const Scalar& f, const Scalar& g) {
    const ChartPtr& m = biv.chart();
    return pair_full(biv, wedge(differential(f, m), differential(g, m)));
}

Multivector hamiltonian_field(const Multivector& biv, const Scalar& f) {
    return contract_form_into_mv(differential(f, biv.chart()), biv);
}

Form one_form_bracket(const Multivector& biv, const Form& mu, const Form& eta) {
    const ChartPtr& m = biv.chart();
    const Scalar paired = pair_full(biv, wedge(mu, eta));
    Form out = differential(paired, m);
    out += contract_mv_into_form(contract_form_into_mv(mu, biv), exterior_d(eta));
    out -= contract_mv_into_form(contract_form_into_mv(eta, biv), exterior_d(mu));
    return out;
}

Form one_form_bracket_lie(const Multivector& biv, const Form& mu, const Form& eta) {
    const ChartPtr& m = biv.chart();
    Form out = lie_derivative_form(contract_form_into_mv(mu, biv), eta);
    out -= lie_derivative_form(contract_form_into_mv(eta, biv), mu);
    out -= differential(pair_full(biv, wedge(mu, eta)), m);
    return out;
}

bool is_casimir(const Multivector& biv, const Scalar& f) {
    return hamiltonian_field(biv, f).is_zero();
}

// ---------------------------------------------------------------------------
// Tangent structure
// ---------------------------------------------------------------------------

Multivector tangent_poisson(const Multivector& biv) {
    require_poisson(biv);
    Multivector lifted = dT_mv(biv);
    require_poisson(lifted);
    return lifted;
}

bool is_linear_tangent_bivector(const Multivector& biv) {
    require_bivector(biv, "is_linear_tangent_bivector");
    const ChartPtr& tm = biv.chart();
    if (!tm->is_tangent()) throw EngineError("is_linear_tangent_bivector: needs a tangent chart");
    const int n = tm->base->dim();
    for (const auto& [idx, c] : biv.comps()) {
        const int a = idx[0], b = idx[1];
        if (b < n) {
            if (!c.is_zero()) return false;
            continue;
        }
        for (const auto& [e, coeff] : c.terms()) {
            (void)coeff;
            int dotted_deg = 0;
            for (int d = n; d < 2 * n; ++d) dotted_deg += e[static_cast<size_t>(d)];
            if (a < n && dotted_deg != 0) return false;   // mixed block: basic coefficient
            if (a >= n && dotted_deg != 1) return false;  // vertical block: fiber-linear
        }
    }
    return true;
}

int rank_at(const Multivector& biv, const Vec& pt) {
    require_bivector(biv, "rank_at");
    const int n = biv.chart()->dim();
    Mat a = mat_zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = signed_comp(biv, i, j).eval(pt);
    return rank(a);
}

Multivector linearize_at(const Multivector& biv, const std::vector<Scalar>& pt) {
    require_bivector(biv, "linearize_at");
    const ChartPtr& m = biv.chart();
    const int n = m->dim();
    if (static_cast<int>(pt.size()) != n)
        throw EngineError("linearize_at: point size must match the chart dimension");
    std::vector<std::optional<Scalar>> repl(m->syms->names().size());
    for (int k = 0; k < n; ++k) {
        for (const auto& [e, coeff] : pt[static_cast<size_t>(k)].terms()) {
            (void)coeff;
            for (int idx = 0; idx < n; ++idx)
                if (e[static_cast<size_t>(idx)] != 0)
                    throw EngineError("linearize_at: point entries may depend on parameters only");
        }
        repl[static_cast<size_t>(k)] = pt[static_cast<size_t>(k)];
    }
    std::vector<std::string> vcoords;
    vcoords.reserve(static_cast<size_t>(n));
    for (const std::string& c : m->coords) vcoords.push_back(dotted_name(c));
    ChartPtr lin = make_chart(m->name + "_lin", vcoords, m->params);
    Multivector out = Multivector::zero(lin, 2);
    for (const auto& [idx, c] : biv.comps()) {
        Scalar acc = lin->zero();
        for (int k = 0; k < n; ++k) {
            Scalar slope = c.partial(k).substitute(repl).transport_by_name(lin->syms);
            acc += slope * lin->coord(k);
        }
        out.add_term(idx, acc);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Field and map checks
// ---------------------------------------------------------------------------

CheckResult canonical_field_check(const Multivector& X, const Multivector& biv) {
    require_bivector(biv, "canonical_field_check");
    const bool direct = lie_derivative_mv(X, biv).is_zero();
    const bool lifted = pullback_mv_along_field(X, dT_mv(biv)).is_zero();
    if (direct != lifted)
        throw EngineError("canonical_field_check: bracket route and lift route disagree");
    CheckResult r;
    r.ok = direct;
    if (!r.ok) r.witness = "nonzero derivative: " + lie_derivative_mv(X, biv).str();
    return r;
}

bool lagrangian_section_check(const Multivector& X, const Multivector& biv) {
    require_bivector(biv, "lagrangian_section_check");
    const ChartPtr& m = biv.chart();
    const Multivector lifted = dT_mv(biv);
    const int n = m->dim();
    std::vector<Form> pushed;
    pushed.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pushed.push_back(x_plus(X, Form::generator(m, i)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Scalar paired = pair_full(
                contract_form_into_mv(pushed[static_cast<size_t>(i)], lifted),
                pushed[static_cast<size_t>(j)]);
            if (!restrict_to_section(X, paired).is_zero()) return false;
        }
    return true;
}

bool poisson_map_check(const PolyMap& phi, const Multivector& src_biv, const Multivector& dst_biv,
                       std::string* witness) {
    return multivector_related(phi, src_biv, dst_biv, witness);
}

bool anchor_related_check(const Multivector& biv, std::string* witness) {
    require_bivector(biv, "anchor_related_check");
    const PolyMap lam = tilde_mv_map(biv, 1);
    return multivector_related(lam, canonical_poisson(biv.chart()), dT_mv(biv), witness);
}

// ---------------------------------------------------------------------------
// Bracket relations on lifts
// ---------------------------------------------------------------------------

bool tangent_bracket_relations(const Multivector& biv, const Scalar& f, const Scalar& g) {
    require_bivector(biv, "tangent_bracket_relations");
    const ChartPtr tm = tangent_chart(biv.chart());
    const Multivector lifted = dT_mv(biv);
    const Scalar fg = poisson_bracket(biv, f, g);
    const Scalar ft = dT_scalar(tm, f), gt = dT_scalar(tm, g);
    const Scalar fv = vT_scalar(tm, f), gv = vT_scalar(tm, g);
    if (poisson_bracket(lifted, ft, gt) != dT_scalar(tm, fg)) return false;
    if (poisson_bracket(lifted, ft, gv) != vT_scalar(tm, fg)) return false;
    if (poisson_bracket(lifted, fv, gt) != vT_scalar(tm, fg)) return false;
    return poisson_bracket(lifted, fv, gv).is_zero();
}

bool xi_bracket_formula(const Multivector& biv, const Form& mu, const Form& eta) {
    require_bivector(biv, "xi_bracket_formula");
    if (mu.degree() != 1 || eta.degree() != 1)
        throw EngineError("xi_bracket_formula: needs 1-forms");
    const Multivector lifted = dT_mv(biv);
    const Scalar lhs = poisson_bracket(lifted, iota_T(mu).to_scalar(), iota_T(eta).to_scalar());
    const Scalar rhs = iota_T(one_form_bracket(biv, mu, eta)).to_scalar();
    return lhs == rhs;
}

bool characteristic_lift_check(const Multivector& biv, const Form& mu) {
    require_bivector(biv, "characteristic_lift_check");
    if (mu.degree() != 1) throw EngineError("characteristic_lift_check: needs a 1-form");
    const Multivector lifted = dT_mv(biv);
    const Multivector field = contract_form_into_mv(mu, biv);
    if (contract_form_into_mv(vT_form(mu), lifted) != vT_mv(field)) return false;
    return contract_form_into_mv(dT_form(mu), lifted) == dT_mv(field);
}

// ---------------------------------------------------------------------------
// Linear structures
// ---------------------------------------------------------------------------

Cubic cubic_zero(int n) {
    return Cubic(static_cast<size_t>(n),
                 std::vector<std::vector<Rat>>(static_cast<size_t>(n),
                                               std::vector<Rat>(static_cast<size_t>(n), Rat(0))));
}

Cubic cubic_from_linear_bivector(const Multivector& biv) {
    require_bivector(biv, "cubic_from_linear_bivector");
    const ChartPtr& m = biv.chart();
    const int n = m->dim();
    Cubic b = cubic_zero(n);
    for (const auto& [idx, c] : biv.comps()) {
        for (const auto& [e, coeff] : c.terms()) {
            int where = -1;
            int total = 0;
            for (size_t v = 0; v < e.size(); ++v) {
                total += e[v];
                if (e[v] == 1 && static_cast<int>(v) < n) where = static_cast<int>(v);
            }
            if (total != 1 || where < 0)
                throw EngineError(
                    "cubic_from_linear_bivector: components must be linear in the coordinates");
            const size_t i = static_cast<size_t>(idx[0]), j = static_cast<size_t>(idx[1]);
            b[i][j][static_cast<size_t>(where)] += coeff;
            b[j][i][static_cast<size_t>(where)] -= coeff;
        }
    }
    return b;
}

Multivector linear_bivector_from(const ChartPtr& m, const Cubic& b) {
    const int n = m->dim();
    if (static_cast<int>(b.size()) != n)
        throw EngineError("linear_bivector_from: constants do not match the chart dimension");
    Multivector out = Multivector::zero(m, 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const size_t si = static_cast<size_t>(i), sj = static_cast<size_t>(j);
            Scalar acc = m->zero();
            for (int k = 0; k < n; ++k) {
                const size_t sk = static_cast<size_t>(k);
                if (b[si][sj][sk] != -b[sj][si][sk])
                    throw EngineError("linear_bivector_from: constants must be antisymmetric");
                acc += m->coord(k) * b[si][sj][sk];
            }
            out.add_term({i, j}, acc);
        }
    return out;
}

LinearMorphismVerdict linear_morphism_check(int n, const Cubic& b) {
    const size_t sn = static_cast<size_t>(n);
    LinearMorphismVerdict v{true, true, true, true};
    for (size_t i = 0; i < sn; ++i)
        for (size_t m = 0; m < sn; ++m)
            for (size_t k = 0; k < sn; ++k)
                if (b[i][m][k] != -b[m][i][k]) {
                    v.antisym = false;
                    v.dual_antisym = false;
                }
    // Coefficientwise transfer identity in (v^j, a_r, b_p).
    for (size_t i = 0; i < sn && v.transfer; ++i)
        for (size_t j = 0; j < sn && v.transfer; ++j)
            for (size_t r = 0; r < sn && v.transfer; ++r)
                for (size_t p = 0; p < sn && v.transfer; ++p) {
                    Rat lhs(0), rhs(0);
                    for (size_t q = 0; q < sn; ++q) {
                        lhs += b[i][q][j] * b[p][r][q];
                        rhs += b[i][p][q] * b[q][r][j] - b[i][r][q] * b[q][p][j];
                    }
                    if (lhs != rhs) v.transfer = false;
                }
    // Jacobi of the induced dual bracket [e^a, e^b] = b[a][b][k] e^k.
    for (size_t a = 0; a < sn && v.dual_jacobi; ++a)
        for (size_t c = 0; c < sn && v.dual_jacobi; ++c)
            for (size_t d = 0; d < sn && v.dual_jacobi; ++d)
                for (size_t w = 0; w < sn && v.dual_jacobi; ++w) {
                    Rat acc(0);
                    for (size_t k = 0; k < sn; ++k)
                        acc += b[a][c][k] * b[k][d][w] + b[c][d][k] * b[k][a][w] +
                               b[d][a][k] * b[k][c][w];
                    if (acc != 0) v.dual_jacobi = false;
                }
    return v;
}

}  // namespace tanlift
