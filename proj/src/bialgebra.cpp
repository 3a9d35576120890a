#include "tanlift/bialgebra.hpp"

#include <utility>

namespace tanlift {

namespace {

void require_cubic(int n, const Cubic& c, const char* who) {
    if (static_cast<int>(c.size()) != n)
        throw EngineError(std::string(who) + ": constants array does not match the dimension");
    for (const auto& plane : c) {
        if (static_cast<int>(plane.size()) != n)
            throw EngineError(std::string(who) + ": constants array is not cubic");
        for (const auto& row : plane)
            if (static_cast<int>(row.size()) != n)
                throw EngineError(std::string(who) + ": constants array is not cubic");
    }
}

bool antisym_first_two(int n, const Cubic& c) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (c[i][j][k] != -c[j][i][k]) return false;
    return true;
}

bool jacobi_only(int n, const Cubic& c) {
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int e = 0; e < n; ++e)
                for (int w = 0; w < n; ++w) {
                    Rat acc(0);
                    for (int k = 0; k < n; ++k)
                        acc += c[a][b][k] * c[k][e][w] + c[b][e][k] * c[k][a][w] +
                               c[e][a][k] * c[k][b][w];
                    if (acc != 0) return false;
                }
    return true;
}

void require_rmatrix(int n, const Mat& r, const char* who) {
    if (static_cast<int>(r.size()) != n)
        throw EngineError(std::string(who) + ": matrix does not match the dimension");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(r[i].size()) != n)
            throw EngineError(std::string(who) + ": matrix is not square");
        for (int j = 0; j < n; ++j)
            if (r[i][j] != -r[j][i])
                throw EngineError(std::string(who) + ": matrix must be antisymmetric");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Lie algebras
// ---------------------------------------------------------------------------

bool lie_axioms(int n, const Cubic& c) {
    require_cubic(n, c, "lie_axioms");
    return antisym_first_two(n, c) && jacobi_only(n, c);
}

LieAlgebra make_lie_algebra(std::vector<std::string> names, Cubic c) {
    const int n = static_cast<int>(names.size());
    if (!lie_axioms(n, c)) throw EngineError("make_lie_algebra: constants fail the Lie axioms");
    return LieAlgebra{std::move(names), std::move(c)};
}

ChartPtr algebra_chart(const LieAlgebra& g, const std::string& chart_name) {
    return make_chart(chart_name, g.names);
}

LieAlgebra tangent_lie_algebra(const LieAlgebra& g) {
    const int n = g.dim();
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(2 * n));
    for (const std::string& s : g.names) names.push_back(s + "_dot");
    for (const std::string& s : g.names) names.push_back(s + "_hat");
    Cubic ct = cubic_zero(2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Rat& v = g.c[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                  [static_cast<size_t>(k)];
                ct[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] = v;
                ct[static_cast<size_t>(i)][static_cast<size_t>(n + j)]
                  [static_cast<size_t>(n + k)] = v;
                ct[static_cast<size_t>(n + j)][static_cast<size_t>(i)]
                  [static_cast<size_t>(n + k)] = -v;
            }
    return make_lie_algebra(std::move(names), std::move(ct));
}

// ---------------------------------------------------------------------------
// Cobrackets and bialgebras
// ---------------------------------------------------------------------------

Cobracket make_cobracket(LieAlgebra g, Cubic d) {
    require_cubic(g.dim(), d, "make_cobracket");
    if (!antisym_first_two(g.dim(), d))
        throw EngineError("make_cobracket: constants must be antisymmetric in the first pair");
    return Cobracket{std::move(g), std::move(d)};
}

bool cocycle_check(int n, const Cubic& c, const Cubic& d) {
    require_cubic(n, c, "cocycle_check");
    require_cubic(n, d, "cocycle_check");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    Rat lhs(0), rhs(0);
                    for (int p = 0; p < n; ++p) {
                        lhs += c[i][j][p] * d[a][b][p];
                        rhs += c[i][p][a] * d[p][b][j] + c[i][p][b] * d[a][p][j];
                        rhs -= c[j][p][a] * d[p][b][i] + c[j][p][b] * d[a][p][i];
                    }
                    if (lhs != rhs) return false;
                }
    return true;
}

BialgebraVerdict bialgebra_verdict(const Cobracket& cb) {
    const int n = cb.g.dim();
    BialgebraVerdict v{};
    v.cocycle = cocycle_check(n, cb.g.c, cb.d);
    v.cojacobi = jacobi_only(n, cb.d);
    v.dual_cocycle = cocycle_check(n, cb.d, cb.g.c);
    v.poisson_route = is_poisson(linear_poisson_of(cb, "g"));
    if (v.cojacobi != v.poisson_route)
        throw EngineError("bialgebra_verdict: constants route and bivector route disagree");
    if (v.cojacobi && v.cocycle != v.dual_cocycle)
        throw EngineError("bialgebra_verdict: cocycle condition is not self-dual");
    return v;
}

bool validate_bialgebra(const Cobracket& cb) {
    const BialgebraVerdict v = bialgebra_verdict(cb);
    return v.cocycle && v.cojacobi;
}

LieAlgebra dual_algebra(const Cobracket& cb, std::vector<std::string> dual_names) {
    if (static_cast<int>(dual_names.size()) != cb.g.dim())
        throw EngineError("dual_algebra: name list does not match the dimension");
    return make_lie_algebra(std::move(dual_names), cb.d);
}

Multivector linear_poisson_of(const Cobracket& cb, const std::string& chart_name) {
    // d[i][j][k] is both the value on e_k and the coefficient of x^k in the
    // fiberwise layout, so the constants pass through unchanged.
    return linear_bivector_from(algebra_chart(cb.g, chart_name), cb.d);
}

Cobracket tangent_cobracket(const Cobracket& cb) {
    const Multivector lifted = dT_mv(linear_poisson_of(cb, "g"));
    return make_cobracket(tangent_lie_algebra(cb.g), cubic_from_linear_bivector(lifted));
}

// ---------------------------------------------------------------------------
// r-matrices
// ---------------------------------------------------------------------------

Mat rmatrix_zero(int n) { return mat_zero(n, n); }

namespace {

// Accumulate v * (e_w ^ e_{a} ^ e_{b}) into the fully antisymmetric table,
// where the first slot carries the bracket value [e_p,e_q] = c[p][q][w] e_w.
void accumulate_trivector(Cubic& t, int w, int a, int b, const Rat& v) {
    if (v == 0 || w == a || w == b || a == b) return;
    const int perms[6][3] = {{w, a, b}, {a, b, w}, {b, w, a},
                             {a, w, b}, {w, b, a}, {b, a, w}};
    for (int p = 0; p < 6; ++p) {
        Rat& slot = t[static_cast<size_t>(perms[p][0])][static_cast<size_t>(perms[p][1])]
                     [static_cast<size_t>(perms[p][2])];
        slot += (p < 3) ? v : -v;
    }
}

// [X^Y, Z^W] = [X,Z]^Y^W - [X,W]^Y^Z - [Y,Z]^X^W + [Y,W]^X^Z, extended
// bilinearly over the strict-pair expansions of r1 and r2.
Cubic schouten_component_route(const LieAlgebra& g, const Mat& r1, const Mat& r2) {
    const int n = g.dim();
    Cubic t = cubic_zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (r1[i][j] == 0) continue;
            for (int k = 0; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    const Rat coef = r1[i][j] * r2[k][l];
                    if (coef == 0) continue;
                    for (int w = 0; w < n; ++w) {
                        accumulate_trivector(t, w, j, l, coef * g.c[i][k][w]);
                        accumulate_trivector(t, w, j, k, -coef * g.c[i][l][w]);
                        accumulate_trivector(t, w, i, l, -coef * g.c[j][k][w]);
                        accumulate_trivector(t, w, i, k, coef * g.c[j][l][w]);
                    }
                }
        }
    return t;
}

Multivector constant_bivector_field(const Mat& r, const std::vector<Multivector>& fields,
                                    const ChartPtr& m) {
    const int n = static_cast<int>(fields.size());
    Multivector out = Multivector::zero(m, 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (r[i][j] != 0)
                out += wedge(fields[static_cast<size_t>(i)], fields[static_cast<size_t>(j)])
                           .scale(r[i][j]);
    return out;
}

Cubic schouten_realization_route(const LieAlgebra& g, const Mat& r1, const Mat& r2) {
    const int n = g.dim();
    const ChartPtr m = algebra_chart(g, "g");
    // Pointed realization e_i -> d/du^i + (1/2) c[j][i][k] u^j d/du^k, a
    // homomorphism to first order at the origin; constant-coefficient wedges
    // of the fields bracket to the algebraic value there.
    std::vector<Multivector> fields;
    fields.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Multivector f = Multivector::zero(m, 1);
        f.add_term({i}, m->constant(Rat(1)));
        for (int k = 0; k < n; ++k) {
            Scalar acc = m->zero();
            for (int j = 0; j < n; ++j)
                acc += m->coord(j) * (g.c[static_cast<size_t>(j)][static_cast<size_t>(i)]
                                         [static_cast<size_t>(k)] /
                                      Rat(2));
            f.add_term({k}, acc);
        }
        fields.push_back(f);
    }
    const Multivector bracket =
        schouten(constant_bivector_field(r1, fields, m), constant_bivector_field(r2, fields, m));
    const Vec origin(m->syms->names().size(), Rat(0));
    Cubic t = cubic_zero(n);
    for (const auto& [idx, c] : bracket.comps()) {
        const Rat v = c.eval(origin);
        if (v == 0) continue;
        const int a = idx[0], b = idx[1], e = idx[2];
        const int perms[6][3] = {{a, b, e}, {b, e, a}, {e, a, b},
                                 {b, a, e}, {a, e, b}, {e, b, a}};
        for (int p = 0; p < 6; ++p)
            t[static_cast<size_t>(perms[p][0])][static_cast<size_t>(perms[p][1])]
             [static_cast<size_t>(perms[p][2])] = (p < 3) ? v : -v;
    }
    return t;
}

}  // namespace

Cubic algebraic_schouten(const LieAlgebra& g, const Mat& r1, const Mat& r2) {
    const int n = g.dim();
    require_rmatrix(n, r1, "algebraic_schouten");
    require_rmatrix(n, r2, "algebraic_schouten");
    Cubic direct = schouten_component_route(g, r1, r2);
    const Cubic realized = schouten_realization_route(g, r1, r2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int e = 0; e < n; ++e)
                if (direct[a][b][e] != realized[a][b][e])
                    throw EngineError(
                        "algebraic_schouten: component formula and field realization disagree");
    return direct;
}

Cubic algebraic_schouten(const LieAlgebra& g, const Mat& r) {
    return algebraic_schouten(g, r, r);
}

bool gybe_check(const LieAlgebra& g, const Mat& r) {
    const int n = g.dim();
    const Cubic t = algebraic_schouten(g, r);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int e = 0; e < n; ++e) {
                    Rat acc(0);
                    for (int p = 0; p < n; ++p)
                        acc += g.c[i][p][a] * t[p][b][e] + g.c[i][p][b] * t[a][p][e] +
                               g.c[i][p][e] * t[a][b][p];
                    if (acc != 0) return false;
                }
    return true;
}

Cobracket coboundary_cobracket(const LieAlgebra& g, const Mat& r) {
    const int n = g.dim();
    require_rmatrix(n, r, "coboundary_cobracket");
    Cubic d = cubic_zero(n);
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Rat acc(0);
                for (int p = 0; p < n; ++p)
                    acc += g.c[k][p][a] * r[p][b] + g.c[k][p][b] * r[a][p];
                d[a][b][k] = acc;
            }
    return make_cobracket(g, d);
}

Mat lift_rmatrix(const LieAlgebra& g, const Mat& r) {
    const int n = g.dim();
    require_rmatrix(n, r, "lift_rmatrix");
    Mat out = mat_zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out[i][n + j] = r[i][j];
            out[n + j][i] = -r[i][j];
        }
    return out;
}

}  // namespace tanlift
