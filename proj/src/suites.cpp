#include "tanlift/runner.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <sstream>

namespace tanlift {

namespace {

// --------------------------------- harness ---------------------------------

/// Per-suite state: a seeded generator, the effective trial count and chart
/// dimension, and the result being built. Only the first failure is recorded.
struct Suite {
    Rng rng;
    int trials;
    int dim;
    SuiteResult out;

    Suite(const std::string& name, const RunOptions& o)
        : rng(suite_seed(name, o.seed)),
          trials(std::max(1, o.trials)),
          dim(std::clamp(o.dim, 2, 4)) {}

    void req(bool ok, const std::string& what) {
        if (!ok && out.pass) {
            out.pass = false;
            out.lines.push_back("counterexample: " + what);
        }
    }
    void req(const CheckResult& r, const std::string& what) {
        req(r.ok, r.witness.empty() ? what : what + ": " + r.witness);
    }
    void add_trials(long long k) { out.trials += static_cast<std::uint64_t>(k); }
    [[nodiscard]] std::string tag(int t) const { return "trial " + std::to_string(t); }
};

// ---------------------------- random ingredients ---------------------------

ChartPtr dim_chart(int n) {
    std::vector<std::string> coords;
    coords.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) coords.push_back("x" + std::to_string(i));
    return make_chart("R" + std::to_string(n), std::move(coords));
}

std::vector<MultiIndex> strict_sets(int n, int p) {
    std::vector<MultiIndex> out;
    MultiIndex cur;
    std::function<void(int)> go = [&](int start) {
        if (static_cast<int>(cur.size()) == p) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            go(i + 1);
            cur.pop_back();
        }
    };
    go(0);
    return out;
}

template <class T>
T random_tensor(Rng& rng, const ChartPtr& c, int deg, int coeff_deg = 2, int terms = 2) {
    T out = T::zero(c, deg);
    auto sets = strict_sets(c->dim(), deg);
    if (sets.empty()) return out;
    for (int t = 0; t < terms; ++t) {
        const auto pick = rng.integer(0, static_cast<long long>(sets.size()) - 1);
        out.add_term(sets[static_cast<size_t>(pick)],
                     rng.polynomial(c->syms, c->dim(), coeff_deg, 2));
    }
    return out;
}

Multivector random_mv(Rng& rng, const ChartPtr& c, int deg, int coeff_deg = 2, int terms = 2) {
    return random_tensor<Multivector>(rng, c, deg, coeff_deg, terms);
}

Form random_form(Rng& rng, const ChartPtr& c, int deg, int coeff_deg = 2, int terms = 2) {
    return random_tensor<Form>(rng, c, deg, coeff_deg, terms);
}

PolyMap random_map(Rng& rng, const ChartPtr& src, const ChartPtr& dst, int deg = 2) {
    std::vector<Scalar> comps;
    comps.reserve(static_cast<size_t>(dst->dim()));
    for (int i = 0; i < dst->dim(); ++i)
        comps.push_back(rng.polynomial(src->syms, src->dim(), deg, 2));
    return make_poly_map(src, dst, std::move(comps));
}

Vec random_point(Rng& rng, int n) {
    Vec out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(rng.rational());
    return out;
}

FiberComps random_fiber(Rng& rng, int n, int r) {
    FiberComps out;
    auto sets = strict_sets(n, r);
    if (sets.empty()) return out;
    for (int t = 0; t < 2; ++t) {
        const auto pick = rng.integer(0, static_cast<long long>(sets.size()) - 1);
        comp_put(out, sets[static_cast<size_t>(pick)], rng.rational());
    }
    return out;
}

Rat comp_of(const FiberComps& w, const MultiIndex& idx) {
    auto it = w.find(idx);
    return it == w.end() ? Rat(0) : it->second;
}

/// Rank of a rational matrix by Gaussian elimination.
int mat_rank(Mat m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        for (size_t rr = 0; rr < rows; ++rr) {
            if (rr == rank || m[rr][c] == 0) continue;
            const Rat f = m[rr][c] / m[rank][c];
            for (size_t cc = c; cc < cols; ++cc) m[rr][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

// ------------------------------- fixed corpus ------------------------------

struct CorpusEntry {
    std::string label;
    Multivector biv;
    int regular_rank;                       // rank on the open dense stratum
    std::function<bool(const Vec&)> singular;  // exact singular-locus test
};

Multivector rotation_dual() {
    ChartPtr c = make_chart("su2_star", {"x", "y", "z"});
    Multivector b = Multivector::zero(c, 2);
    b.add_term({0, 1}, c->coord(2));
    b.add_term({1, 2}, c->coord(0));
    b.add_term({2, 0}, c->coord(1));
    return b;
}

Multivector quadratic_r4() {
    ChartPtr c = make_chart("quad4", {"x1", "x2", "x3", "x4"});
    Multivector b = Multivector::zero(c, 2);
    b.add_term({0, 1}, -(c->coord(2) * c->coord(2) + c->coord(3) * c->coord(3)));
    b.add_term({0, 2}, c->coord(1) * c->coord(2));
    b.add_term({0, 3}, c->coord(1) * c->coord(3));
    b.add_term({1, 2}, -(c->coord(0) * c->coord(2)));
    b.add_term({1, 3}, -(c->coord(0) * c->coord(3)));
    return b;
}

Multivector affine_group_biv() {
    ChartPtr c = make_chart("affine", {"a", "b"});
    Multivector b = Multivector::zero(c, 2);
    b.add_term({0, 1}, c->coord(0) * c->coord(0) - c->coord(0));
    return b;
}

Multivector heisenberg_biv() {
    ChartPtr c = make_chart("heis3", {"x", "y", "z"});
    Multivector b = Multivector::zero(c, 2);
    b.add_term({0, 2}, c->coord(0));
    b.add_term({1, 2}, c->coord(1));
    return b;
}

Multivector plane_biv() {
    ChartPtr c = make_chart("plane", {"x", "y"});
    Multivector b = Multivector::zero(c, 2);
    b.add_term({0, 1}, c->constant(1));
    return b;
}

std::vector<CorpusEntry> poisson_corpus() {
    std::vector<CorpusEntry> out;
    out.push_back({"linear rotation-dual", rotation_dual(), 2,
                   [](const Vec& p) { return p[0] == 0 && p[1] == 0 && p[2] == 0; }});
    out.push_back({"quadratic on R4", quadratic_r4(), 2,
                   [](const Vec& p) { return p[2] == 0 && p[3] == 0; }});
    out.push_back({"affine group", affine_group_biv(), 2,
                   [](const Vec& p) { return p[0] == 0 || p[0] == 1; }});
    out.push_back({"nilpotent group", heisenberg_biv(), 2,
                   [](const Vec& p) { return p[0] == 0 && p[1] == 0; }});
    out.push_back({"symplectic plane", plane_biv(), 2, [](const Vec&) { return false; }});
    return out;
}

void set_c(Cubic& c, int i, int j, int k, const Rat& v) {
    c[i][j][k] = v;
    c[j][i][k] = -v;
}

void set_r(Mat& r, int i, int j, const Rat& v) {
    r[i][j] = v;
    r[j][i] = -v;
}

LieAlgebra so3_algebra() {
    Cubic c = cubic_zero(3);
    set_c(c, 0, 1, 2, 1);
    set_c(c, 1, 2, 0, 1);
    set_c(c, 2, 0, 1, 1);
    return make_lie_algebra({"e1", "e2", "e3"}, c);
}

/// Basis adapted to a decomposable r-matrix: [h, u] = -2v, [h, v] = 2u,
/// [u, v] = -2h.
LieAlgebra wedge_basis_su2() {
    Cubic c = cubic_zero(3);
    set_c(c, 0, 1, 2, -2);
    set_c(c, 0, 2, 1, 2);
    set_c(c, 1, 2, 0, -2);
    return make_lie_algebra({"h", "u", "v"}, c);
}

// Left-invariant basis of the affine line group: [X1, X2] = X2.
LieAlgebra affine_algebra() {
    Cubic c = cubic_zero(2);
    set_c(c, 0, 1, 1, 1);
    return make_lie_algebra({"X1", "X2"}, c);
}

LieAlgebra heisenberg_algebra() {
    Cubic c = cubic_zero(3);
    set_c(c, 0, 1, 2, 1);
    return make_lie_algebra({"p", "q", "z"}, c);
}

Mat wedge_rmatrix_su2() {
    Mat r = rmatrix_zero(3);
    set_r(r, 1, 2, Rat(-1) / 2);
    return r;
}

std::vector<std::pair<std::string, Cobracket>> bialgebra_corpus() {
    std::vector<std::pair<std::string, Cobracket>> out;
    {
        Mat r = rmatrix_zero(3);
        set_r(r, 0, 1, 1);
        out.emplace_back("rotation coboundary", coboundary_cobracket(so3_algebra(), r));
    }
    {
        LieAlgebra g = wedge_basis_su2();
        out.emplace_back("wedge-basis coboundary", coboundary_cobracket(g, wedge_rmatrix_su2()));
    }
    {
        Mat r = rmatrix_zero(2);
        set_r(r, 0, 1, 1);
        out.emplace_back("affine coboundary", coboundary_cobracket(affine_algebra(), r));
    }
    {
        Mat r = rmatrix_zero(3);
        set_r(r, 0, 1, 1);
        out.emplace_back("nilpotent coboundary", coboundary_cobracket(heisenberg_algebra(), r));
    }
    {
        LieAlgebra ab = make_lie_algebra({"a1", "a2", "a3"}, cubic_zero(3));
        out.emplace_back("abelian with rotation cobracket",
                         make_cobracket(ab, so3_algebra().c));
    }
    {
        // Dual pair: the dual algebra of the wedge-basis structure, carrying
        // the original bracket constants as its cobracket.
        LieAlgebra g = wedge_basis_su2();
        Cobracket cb = coboundary_cobracket(g, wedge_rmatrix_su2());
        LieAlgebra dual = dual_algebra(cb, {"f0", "f1", "f2"});
        out.emplace_back("solvable dual pair", make_cobracket(dual, g.c));
    }
    return out;
}

std::vector<Scalar> chart_zeros(const ChartPtr& c) {
    return std::vector<Scalar>(static_cast<size_t>(c->dim()), c->zero());
}

std::string mv_diff(const Multivector& a, const Multivector& b) {
    return a.str() + " vs " + b.str();
}

Rat parity_scale(int e) { return e % 2 == 0 ? Rat(1) : Rat(-1); }

// ------------------------------- suite bodies ------------------------------

void s_ring_axioms(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        Scalar a = s.rng.polynomial(m->syms, n, 3, 3);
        Scalar b = s.rng.polynomial(m->syms, n, 3, 3);
        Scalar c = s.rng.polynomial(m->syms, n, 3, 3);
        s.req((a + b) + c == a + (b + c), s.tag(t) + ": addition is not associative");
        s.req(a + b == b + a, s.tag(t) + ": addition is not commutative");
        s.req(a * b == b * a, s.tag(t) + ": product is not commutative");
        s.req((a * b) * c == a * (b * c), s.tag(t) + ": product is not associative");
        s.req(a * (b + c) == a * b + a * c, s.tag(t) + ": product does not distribute");
        s.req((a - a).is_zero(), s.tag(t) + ": a - a is nonzero");
        s.req(a.pow(3) == a * a * a, s.tag(t) + ": power disagrees with iterated product");
        const int k = static_cast<int>(s.rng.integer(0, n - 1));
        s.req((a * b).partial(k) == a.partial(k) * b + a * b.partial(k),
              s.tag(t) + ": derivative is not a derivation");
        Vec pt = random_point(s.rng, n);
        s.req((a * b + c).eval(pt) == a.eval(pt) * b.eval(pt) + c.eval(pt),
              s.tag(t) + ": evaluation is not a ring morphism");
    }
    s.add_trials(s.trials);
}

void s_adjunction(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        const int q = static_cast<int>(s.rng.integer(1, std::min(3, n)));
        const int p = static_cast<int>(s.rng.integer(1, q));
        Multivector X = random_mv(s.rng, m, q);
        Form mu = random_form(s.rng, m, p);
        Form eta = random_form(s.rng, m, q - p);
        s.req(pair_full(contract_form_into_mv(mu, X), eta) == pair_full(X, wedge(mu, eta)),
              s.tag(t) + ": form-into-field contraction is not adjoint to the wedge");
        Multivector Y = random_mv(s.rng, m, q - p);
        Form nu = random_form(s.rng, m, q);
        Multivector Xp = random_mv(s.rng, m, p);
        s.req(pair_full(Y, contract_mv_into_form(Xp, nu)) == pair_full(wedge(Xp, Y), nu),
              s.tag(t) + ": field-into-form contraction is not adjoint to the wedge");
    }
    s.add_trials(s.trials);
}

void s_schouten_graded(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    for (int t = 0; t < s.trials; ++t) {
        const int p = static_cast<int>(s.rng.integer(1, 2));
        const int q = static_cast<int>(s.rng.integer(1, 2));
        const int r = static_cast<int>(s.rng.integer(1, 2));
        Multivector X = random_mv(s.rng, m, p);
        Multivector Y = random_mv(s.rng, m, q);
        Multivector Z = random_mv(s.rng, m, r);
        s.req(schouten(X, Y) == schouten(Y, X).scale(-parity_scale((p - 1) * (q - 1))),
              s.tag(t) + ": graded antisymmetry fails at degrees (" + std::to_string(p) +
                  ", " + std::to_string(q) + ")");
        Multivector lhs = schouten(X, wedge(Y, Z));
        Multivector rhs =
            wedge(schouten(X, Y), Z) + wedge(Y, schouten(X, Z)).scale(parity_scale((p - 1) * q));
        s.req(lhs == rhs, s.tag(t) + ": graded Leibniz rule fails: " + mv_diff(lhs, rhs));
        Multivector x1 = random_mv(s.rng, m, 1);
        s.req(schouten(x1, Z) == lie_derivative_mv(x1, Z),
              s.tag(t) + ": degree-one bracket differs from the Lie derivative");
    }
    s.add_trials(s.trials);
}

void s_schouten_jacobi(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    for (int t = 0; t < s.trials; ++t) {
        const int p = static_cast<int>(s.rng.integer(1, 2));
        const int q = static_cast<int>(s.rng.integer(1, 2));
        const int r = static_cast<int>(s.rng.integer(1, 2));
        Multivector X = random_mv(s.rng, m, p, 2, 1);
        Multivector Y = random_mv(s.rng, m, q, 2, 1);
        Multivector Z = random_mv(s.rng, m, r, 2, 1);
        Multivector j =
            schouten(X, schouten(Y, Z)).scale(parity_scale((p - 1) * (r - 1))) +
            schouten(Y, schouten(Z, X)).scale(parity_scale((q - 1) * (p - 1))) +
            schouten(Z, schouten(X, Y)).scale(parity_scale((r - 1) * (q - 1)));
        s.req(j.is_zero(), s.tag(t) + ": graded Jacobi identity fails with defect " + j.str());
    }
    s.add_trials(s.trials);
}

void s_kappa_involution(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    const int t1 = s.trials;
    const int t2 = std::max(1, s.trials / 5);
    const int t3 = std::max(1, s.trials / 10);
    s.req(check_flip_involution(m, s.rng, t1), "double flip is not the identity");
    s.req(check_flip_duality(m, s.rng, t2), "flip duality");
    for (auto [i, j] : {std::pair{1, 1}, {1, 2}, {0, 2}}) {
        s.req(check_flip_wedge(m, i, j, s.rng, t3),
              "tangent flip does not respect the wedge at degrees (" + std::to_string(i) +
                  ", " + std::to_string(j) + ")");
        s.req(check_cotangent_flip_wedge(m, i, j, s.rng, t3),
              "cotangent flip does not respect the wedge at degrees (" + std::to_string(i) +
                  ", " + std::to_string(j) + ")");
    }
    s.add_trials(t1 + t2 + 6 * t3);
}

void s_diagram_swap(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    ChartPtr tm = tangent_chart(m);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        // Degree one: the flip swaps foot velocity with fiber point, so both
        // projections of the iterated bundle exchange under it.
        MvPt u = random_mv_pt(tm, 1, s.rng);
        MvPt uu = as_iterated_point(kappa_r(u));
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            ok = ok && uu.b.vals[i] == u.b.vals[i];                    // base point kept
            ok = ok && uu.b.vals[n + i] == comp_of(u.w, {i});          // foot <- fiber
            ok = ok && comp_of(uu.w, {i}) == u.b.vals[n + i];          // fiber <- foot
            ok = ok && comp_of(uu.w, {n + i}) == comp_of(u.w, {n + i});
        }
        s.req(ok, s.tag(t) + ": projection squares fail under the degree-one flip");
        // Higher degree: the graded flip covers both projections.
        const int r = 2 + static_cast<int>(s.rng.integer(0, 1));
        MvPt ur = random_mv_pt(tm, r, s.rng);
        TMvPt v = kappa_r(ur);
        bool okr = true;
        for (int i = 0; i < n; ++i) {
            okr = okr && v.pt.b.vals[i] == ur.b.vals[i];
            okr = okr && v.dx[i] == ur.b.vals[n + i];
        }
        for (const auto& idx : strict_sets(n, r))
            okr = okr && comp_of(v.pt.w, idx) == comp_of(ur.w, idx);
        s.req(okr, s.tag(t) + ": graded flip does not cover the bundle projections at degree " +
                       std::to_string(r));
    }
    s.add_trials(s.trials);
}

void s_diagram_covector(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    ChartPtr tm = tangent_chart(m);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        const int r = static_cast<int>(s.rng.integer(1, 3));
        FormPt a = random_form_pt(tm, r, s.rng);
        TFormPt z = eps_r(a);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            ok = ok && z.pt.b.vals[i] == a.b.vals[i];
            ok = ok && z.dx[i] == a.b.vals[n + i];
        }
        s.req(ok, s.tag(t) + ": covector flip does not cover the bundle projections");
        // The all-dotted component block is the fiber point of the image.
        bool okb = true;
        for (const auto& idx : strict_sets(n, r)) {
            MultiIndex shifted = idx;
            for (int& v : shifted) v += n;
            okb = okb && comp_of(z.pt.p, idx) == comp_of(a.p, shifted);
        }
        s.req(okb, s.tag(t) + ": dotted component block does not pass to the fiber point");
        // The classical inverse covers the same square from the other side.
        TFormPt z1 = random_tform_pt(m, 1, s.rng);
        FormPt a1 = alpha_classic(z1);
        bool okc = true;
        for (int i = 0; i < n; ++i) {
            okc = okc && a1.b.vals[i] == z1.pt.b.vals[i];
            okc = okc && a1.b.vals[n + i] == z1.dx[i];
        }
        s.req(okc, s.tag(t) + ": classical covector flip is not fibered over TM");
    }
    s.add_trials(s.trials);
}

void s_diagram_pairing(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    ChartPtr tm = tangent_chart(m);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        const int r = static_cast<int>(s.rng.integer(1, std::min(3, n)));
        MvPt u = random_mv_pt(tm, r, s.rng);
        TMvPt ku = kappa_r(u);
        TFormPt z{FormPt{ku.pt.b, r, random_fiber(s.rng, n, r)}, ku.dx,
                  random_fiber(s.rng, n, r)};
        s.req(tangent_pairing(z, ku) == pairing(kappa_r_dual(z), u),
              s.tag(t) + ": tangent/cotangent duality square fails at degree " +
                  std::to_string(r));
        FormPt b = random_form_pt(tm, r, s.rng);
        TFormPt eb = eps_r(b);
        TMvPt v{MvPt{eb.pt.b, r, random_fiber(s.rng, n, r)}, eb.dx, random_fiber(s.rng, n, r)};
        s.req(tangent_pairing(eb, v) == pairing(b, eps_r_dual(v)),
              s.tag(t) + ": cotangent/tangent duality square fails at degree " +
                  std::to_string(r));
    }
    s.add_trials(s.trials);
}

void s_diagram_inverse(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    ChartPtr tm = tangent_chart(m);
    for (int t = 0; t < s.trials; ++t) {
        TFormPt z = random_tform_pt(m, 1, s.rng);
        s.req(eq(eps_classic(alpha_classic(z)), z),
              s.tag(t) + ": covector flip then its inverse moved the point");
        FormPt a = random_form_pt(tm, 1, s.rng);
        s.req(eq(alpha_classic(eps_classic(a)), a),
              s.tag(t) + ": inverse then covector flip moved the point");
        s.req(eq(kappa_r_dual(z), alpha_classic(z)),
              s.tag(t) + ": degree-one dual flip differs from the classical map");
        s.req(eq(eps_r(a), eps_classic(a)),
              s.tag(t) + ": degree-one covector flip differs from the classical map");
    }
    s.add_trials(s.trials);
}

void s_naturality(Suite& s) {
    const int maps = std::max(10, s.trials / 5);
    const int inner = 5;
    for (int k = 0; k < maps; ++k) {
        const int ns = 2 + k % 2;
        const int nd = 2 + (k / 2) % 2;
        ChartPtr src = dim_chart(ns);
        ChartPtr dst = nd == ns ? src : dim_chart(nd);
        PolyMap phi = random_map(s.rng, src, dst, 2);
        const int r = 1 + k % std::min(3, std::min(ns, nd));
        s.req(check_flip_naturality(phi, r, s.rng, inner),
              "flip naturality fails for map " + std::to_string(k) + " at degree " +
                  std::to_string(r));
    }
    s.add_trials(static_cast<long long>(maps) * inner);
}

void s_form_facets(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        const int r = static_cast<int>(s.rng.integer(1, std::min(3, n)));
        Form mu = random_form(s.rng, m, r);
        const int i = static_cast<int>(s.rng.integer(1, r));
        s.req(check_lift_form_facet(mu, i, s.rng, 1), s.tag(t) + ": form-lift facet");
        if (t % 10 == 0)
            s.req(check_iota_tautological(mu),
                  s.tag(t) + ": vertical contraction differs from the tautological pullback");
    }
    s.add_trials(s.trials);
}

void s_field_facets(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        const int r = static_cast<int>(s.rng.integer(1, std::min(3, n)));
        Multivector X = random_mv(s.rng, m, r);
        const int i = static_cast<int>(s.rng.integer(1, r));
        s.req(check_lift_mv_facet(X, i, s.rng, 1), s.tag(t) + ": field-lift facet");
    }
    s.add_trials(s.trials);
}

void s_lift_bracket(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        const int p = 1 + t % std::min(3, n);
        const int q = 1 + (t / 3) % std::min(3, n);
        Multivector X = random_mv(s.rng, m, p);
        Multivector Y = random_mv(s.rng, m, q);
        Multivector lhs = schouten(dT_mv(X), dT_mv(Y));
        Multivector rhs = dT_mv(schouten(X, Y));
        s.req(lhs == rhs, s.tag(t) + ": complete lift does not preserve the bracket at " +
                              "degrees (" + std::to_string(p) + ", " + std::to_string(q) +
                              "): " + mv_diff(lhs, rhs));
    }
    s.add_trials(s.trials);
}

void s_contraction_rules(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        // Contraction rules pair a lifted covector with a lifted r-field.
        const int p = static_cast<int>(s.rng.integer(1, std::min(3, n)));
        Multivector X = random_mv(s.rng, m, p);
        Form mu = random_form(s.rng, m, 1);
        Multivector vlift = vT_mv(contract_form_into_mv(mu, X));
        s.req(contract_form_into_mv(dT_form(mu), vT_mv(X)) == vlift,
              s.tag(t) + ": complete covector against vertical field");
        s.req(contract_form_into_mv(vT_form(mu), dT_mv(X)) == vlift,
              s.tag(t) + ": vertical covector against complete field");
        s.req(contract_form_into_mv(dT_form(mu), dT_mv(X)) ==
                  dT_mv(contract_form_into_mv(mu, X)),
              s.tag(t) + ": complete covector against complete field");
        s.req(contract_form_into_mv(vT_form(mu), vT_mv(X)).is_zero(),
              s.tag(t) + ": vertical against vertical is nonzero");
        // Full pairing of complete lifts dies above degree two.
        if (n >= 3) {
            Multivector X3 = random_mv(s.rng, m, 3);
            Form mu3 = random_form(s.rng, m, 3);
            s.req(pair_full(dT_mv(X3), dT_form(mu3)).is_zero(),
                  s.tag(t) + ": degree-3 complete/complete pairing is nonzero");
        }
    }
    // Sharpness: at degree two the complete/complete pairing survives.
    {
        ChartPtr p3 = dim_chart(3);
        Multivector X = Multivector::zero(p3, 2);
        X.add_term({0, 1}, p3->coord(0));
        Form mu = Form::zero(p3, 2);
        mu.add_term({0, 1}, p3->coord(2));
        s.req(!pair_full(dT_mv(X), dT_form(mu)).is_zero(),
              "degree-2 complete/complete pairing vanished on a generic pair");
    }
    s.add_trials(s.trials);
}

void s_bracket_relations(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        const int p = static_cast<int>(s.rng.integer(1, std::min(3, n)));
        const int q = static_cast<int>(s.rng.integer(1, std::min(3, n)));
        Multivector X = random_mv(s.rng, m, p);
        Multivector Y = random_mv(s.rng, m, q);
        s.req(schouten(vT_mv(X), dT_mv(Y)) == vT_mv(schouten(X, Y)),
              s.tag(t) + ": vertical/complete bracket is not the vertical lift");
        s.req(schouten(vT_mv(X), vT_mv(Y)).is_zero(),
              s.tag(t) + ": vertical/vertical bracket is nonzero");
        s.req(schouten(dT_mv(X), dT_mv(Y)) == dT_mv(schouten(X, Y)),
              s.tag(t) + ": complete/complete bracket is not the complete lift");
    }
    s.add_trials(s.trials);
}

void s_derivative_forms(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        Multivector X = random_mv(s.rng, m, 1);
        const int k = static_cast<int>(s.rng.integer(0, std::min(3, n)));
        Form mu = random_form(s.rng, m, k);
        s.req(lie_derivative_form(X, mu) == pullback_form_along_field(X, dT_form(mu)),
              s.tag(t) + ": Lie derivative differs from the section pullback of the lift");
        s.req(mu == pullback_form_along_field(X, vT_form(mu)),
              s.tag(t) + ": section pullback of the vertical lift is not the identity");
    }
    s.add_trials(s.trials);
}

void s_derivative_fields(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        Multivector X = random_mv(s.rng, m, 1);
        const int k = static_cast<int>(s.rng.integer(1, std::min(3, n)));
        Multivector lam = random_mv(s.rng, m, k);
        s.req(lie_derivative_mv(X, lam) == pullback_mv_along_field(X, dT_mv(lam)),
              s.tag(t) + ": Lie derivative differs from the section pullback of the lift");
        s.req(lam == pullback_mv_along_field(X, vT_mv(lam)),
              s.tag(t) + ": section pullback of the vertical lift is not the identity");
    }
    s.add_trials(s.trials);
}

void s_invariance_pairs(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    for (int t = 0; t < s.trials; ++t) {
        Multivector X = random_mv(s.rng, m, 1);
        Multivector lam = random_mv(s.rng, m, 2);
        if (t % 5 == 0) {
            // Manufactured invariant pair: a coordinate field and a bivector
            // whose coefficients do not involve that coordinate.
            X = Multivector::generator(m, 0);
            std::vector<std::optional<Scalar>> repl(m->syms->size());
            repl[0] = m->zero();
            Multivector flat = Multivector::zero(m, 2);
            for (const auto& [idx, c] : lam.comps()) flat.add_term(idx, c.substitute(repl));
            lam = flat;
        }
        const bool invariant = lie_derivative_mv(X, lam).is_zero();
        const bool lagrangian = lagrangian_section_check(X, lam);
        s.req(invariant == lagrangian,
              s.tag(t) + ": section-image pairing criterion disagrees with invariance");
        if (t % 5 == 0) s.req(invariant, s.tag(t) + ": manufactured pair is not invariant");
    }
    s.add_trials(s.trials);
}

void s_line_decomposition(Suite& s) {
    // One-dimensional base with generic quadratic coefficients as parameters.
    ChartPtr m = make_chart("line", {"x"}, {"a0", "a1", "a2", "b0", "b1", "b2"});
    ChartPtr tm = tangent_chart(m);
    Scalar x = m->coord(0);
    auto coeff = [&](int off) {
        return Scalar::variable(m->syms, 1 + off) + Scalar::variable(m->syms, 2 + off) * x +
               Scalar::variable(m->syms, 3 + off) * x * x;
    };
    Scalar Xc = coeff(0), Yc = coeff(3);
    Multivector X = Multivector::generator(m, 0).scale(Xc);
    Multivector Y = Multivector::generator(m, 0).scale(Yc);
    // Restrict the complete lift of Y to the section image of X.
    Multivector lifted = dT_mv(Y);
    Multivector restricted = Multivector::zero(tm, 1);
    for (const auto& [idx, c] : lifted.comps())
        restricted.add_term(idx, vT_scalar(tm, restrict_to_section(X, c)));
    // Horizontal generator along the section and the vertical complement.
    Multivector H =
        Multivector::generator(tm, 0) +
        Multivector::generator(tm, 1).scale(vT_scalar(tm, Xc.partial(0)));
    Multivector vert = vT_mv(schouten(X, Y));
    s.req(restricted == H.scale(vT_scalar(tm, Yc)) + vert,
          "restricted lift does not split into horizontal part and bracket lift");
    s.req(vert.comp({1}) == vT_scalar(tm, Xc * Yc.partial(0) - Yc * Xc.partial(0)),
          "vertical component is not the lifted commutator coefficient");
    s.req(vert.comp({0}).is_zero(), "bracket lift has a horizontal component");
}

void s_jacobi_self_bracket(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    for (int t = 0; t < s.trials; ++t) {
        Multivector biv = random_mv(s.rng, m, 2, 2, 3);
        JacobiVerdict v = jacobi_verdict(biv);
        s.req(v.self_bracket == v.cyclic_defect.scale(Rat(2)),
              s.tag(t) + ": self-bracket is not twice the cyclic defect for " + biv.str());
        s.req(v.schouten_ok == v.cyclic_ok,
              s.tag(t) + ": the two integrability verdicts disagree for " + biv.str());
    }
    s.add_trials(s.trials);
}

void s_linear_characterization(Suite& s) {
    // Positive: rotation constants; their transfer identity and dual Jacobi hold.
    LinearMorphismVerdict good = linear_morphism_check(3, so3_algebra().c);
    s.req(good.antisym && good.transfer && good.dual_antisym && good.dual_jacobi,
          "rotation constants fail the linear characterization");
    // Negative: antisymmetric constants whose induced bracket breaks Jacobi.
    Cubic bad = cubic_zero(3);
    set_c(bad, 0, 1, 0, 1);
    set_c(bad, 1, 2, 1, 1);
    set_c(bad, 2, 0, 2, 1);
    LinearMorphismVerdict nb = linear_morphism_check(3, bad);
    s.req(nb.antisym && !nb.transfer && !nb.dual_jacobi,
          "known non-Jacobi constants pass the transfer identity");
    // Random equivalence against the bivector route.
    const int n = s.dim;
    ChartPtr m = dim_chart(n);
    for (int t = 0; t < s.trials; ++t) {
        Cubic b = cubic_zero(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = 0; k < n; ++k) set_c(b, i, j, k, s.rng.rational(-2, 2, 2));
        LinearMorphismVerdict v = linear_morphism_check(n, b);
        const bool linear_ok = v.antisym && v.transfer;
        s.req(linear_ok == (v.dual_antisym && v.dual_jacobi),
              s.tag(t) + ": transfer identity disagrees with the dual Lie axioms");
        s.req(linear_ok == is_poisson(linear_bivector_from(m, b)),
              s.tag(t) + ": transfer identity disagrees with the bivector Jacobi check");
    }
    s.add_trials(s.trials);
}

void s_two_form_diagram(Suite& s) {
    ChartPtr p2 = dim_chart(2);
    Form closed = wedge(Form::generator(p2, 0), Form::generator(p2, 1));
    s.req(check_two_form_diagram(closed, s.rng, 10), "area form fails the lift diagram");
    s.req(check_lift_symplectic_pullback(closed), "area form: lift vs canonical pullback");
    ChartPtr p3 = dim_chart(3);
    Form open3 = wedge(Form::generator(p3, 1), Form::generator(p3, 2)).scale(p3->coord(0));
    s.req(!check_two_form_diagram(open3, s.rng, 10).ok,
          "non-closed 2-form passes the lift diagram");
    s.req(check_lift_symplectic_pullback(open3), "non-closed 2-form: lift vs pullback");
    ChartPtr m = dim_chart(s.dim);
    for (int t = 0; t < s.trials / 5; ++t) {
        Form omega = t % 3 == 0 ? exterior_d(random_form(s.rng, m, 1))
                                : random_form(s.rng, m, 2);
        s.req(check_lift_symplectic_pullback(omega),
              s.tag(t) + ": lift/pullback equality does not track closedness");
        s.req(check_two_form_diagram(omega, s.rng, 3).ok == exterior_d(omega).is_zero(),
              s.tag(t) + ": relation diagram does not track closedness");
    }
    s.add_trials(std::max(1, s.trials / 5));
}

void s_anchor_relatedness(Suite& s) {
    for (const auto& e : poisson_corpus()) {
        std::string w;
        s.req(anchor_related_check(e.biv, &w),
              "contraction morphism is not related for " + e.label + ": " + w);
    }
    ChartPtr m = dim_chart(s.dim);
    bool saw_negative = false;
    const int reps = std::max(1, s.trials / 5);
    for (int t = 0; t < reps; ++t) {
        Multivector biv = random_mv(s.rng, m, 2, 2, 2);
        const bool poisson = is_poisson(biv);
        saw_negative = saw_negative || !poisson;
        s.req(anchor_related_check(biv) == poisson,
              s.tag(t) + ": relatedness does not match the Jacobi verdict for " + biv.str());
    }
    s.req(saw_negative, "sampling produced no non-integrable bivector to reject");
    s.add_trials(reps);
}

void s_bivector_relation(Suite& s) {
    const int inner = std::max(2, s.trials / 10);
    for (const auto& e : poisson_corpus()) {
        RelationResult r = check_bivector_relation(e.biv, s.rng, inner);
        s.req(r.forward, "relation route mismatch for " + e.label + ": " + r.witness);
        s.req(r.fiber_independent,
              "relation value moves along the kernel for " + e.label + ": " + r.witness);
        s.add_trials(inner);
    }
    ChartPtr m = dim_chart(s.dim);
    Multivector cst = Multivector::zero(m, 2);
    cst.add_term({0, 1}, m->constant(Rat(2)));
    RelationResult r = check_bivector_relation(cst, s.rng, inner);
    s.req(r.forward && r.fiber_independent, "constant bivector fails the relation: " + r.witness);
    s.add_trials(inner);
}

void s_strict_lift_formula(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    ChartPtr tm = tangent_chart(m);
    const int n = m->dim();
    for (int t = 0; t < s.trials; ++t) {
        Multivector biv = random_mv(s.rng, m, 2, 2, 3);
        Multivector oracle = Multivector::zero(tm, 2);
        for (const auto& [idx, A] : biv.comps()) {
            const int i = idx[0], j = idx[1];
            Scalar Av = vT_scalar(tm, A);
            oracle.add_term({i, n + j}, Av);
            oracle.add_term({n + i, j}, Av);
            Scalar dotted = tm->zero();
            for (int k = 0; k < n; ++k)
                dotted += vT_scalar(tm, A.partial(k)) * tm->coord(n + k);
            oracle.add_term({n + i, n + j}, dotted);
        }
        s.req(oracle == dT_mv(biv),
              s.tag(t) + ": strict-component formula disagrees with the lift for " + biv.str());
    }
    s.add_trials(s.trials);
}

void s_function_lift_brackets(Suite& s) {
    auto corpus = poisson_corpus();
    for (int t = 0; t < s.trials; ++t) {
        const auto& e = corpus[static_cast<size_t>(t) % corpus.size()];
        const ChartPtr& c = e.biv.chart();
        Scalar f = s.rng.polynomial(c->syms, c->dim(), 2, 2);
        Scalar g = s.rng.polynomial(c->syms, c->dim(), 2, 2);
        s.req(tangent_bracket_relations(e.biv, f, g),
              s.tag(t) + ": lifted function brackets fail on " + e.label);
    }
    s.add_trials(s.trials);
}

void s_fiberwise_brackets(Suite& s) {
    auto corpus = poisson_corpus();
    std::vector<Multivector> lifted;
    lifted.reserve(corpus.size());
    for (const auto& e : corpus) lifted.push_back(tangent_poisson(e.biv));
    for (int t = 0; t < s.trials; ++t) {
        const size_t k = static_cast<size_t>(t) % corpus.size();
        const Multivector& biv = corpus[k].biv;
        const ChartPtr& c = biv.chart();
        Form mu = random_form(s.rng, c, 1);
        Form eta = random_form(s.rng, c, 1);
        Scalar lhs = poisson_bracket(lifted[k], iota_T(mu).to_scalar(), iota_T(eta).to_scalar());
        Scalar rhs = iota_T(one_form_bracket(biv, mu, eta)).to_scalar();
        s.req(lhs == rhs, s.tag(t) + ": fiber-linear bracket identity fails on " +
                              corpus[k].label);
        s.req(xi_bracket_formula(biv, mu, eta),
              s.tag(t) + ": coordinate form of the fiber-linear identity fails on " +
                  corpus[k].label);
    }
    s.add_trials(s.trials);
}

void s_quadratic_plane_example(Suite& s) {
    // Fixed pins on the plane.
    ChartPtr c = make_chart("plane", {"x", "y"});
    ChartPtr tc = tangent_chart(c);
    Scalar x = c->coord(0);
    Multivector biv = Multivector::zero(c, 2);
    biv.add_term({0, 1}, x * x);
    Multivector expected = Multivector::zero(tc, 2);
    expected.add_term({0, 3}, vT_scalar(tc, x * x));
    expected.add_term({2, 1}, vT_scalar(tc, x * x));
    expected.add_term({2, 3}, tc->coord(0) * tc->coord(2) * Rat(2));
    s.req(dT_mv(biv) == expected, "lift of the quadratic plane bivector: " +
                                      mv_diff(dT_mv(biv), expected));
    Form dx = Form::generator(c, 0), dy = Form::generator(c, 1);
    Form xdy = dy.scale(x);
    s.req(one_form_bracket(biv, xdy, dy) == dy.scale(x * x),
          "bracket {x dy, dy} is not x^2 dy");
    s.req(one_form_bracket(biv, xdy, dx) == dx.scale(x * x * Rat(-2)),
          "bracket {x dy, dx} is not -2 x^2 dx");
    // General coefficients: two 1-forms with free quadratic coefficients.
    std::vector<std::string> ps;
    for (const char* p : {"a", "b", "c", "d"})
        for (int k = 0; k < 6; ++k) ps.push_back(std::string(p) + std::to_string(k));
    ChartPtr g = make_chart("plane_general", {"x", "y"}, ps);
    Scalar gx = g->coord(0), gy = g->coord(1);
    auto coeff = [&](int block) {
        auto pv = [&](int k) { return Scalar::variable(g->syms, 2 + 6 * block + k); };
        return pv(0) + pv(1) * gx + pv(2) * gy + pv(3) * gx * gx + pv(4) * gx * gy +
               pv(5) * gy * gy;
    };
    Form mu = Form::generator(g, 0).scale(coeff(0)) + Form::generator(g, 1).scale(coeff(1));
    Form eta = Form::generator(g, 0).scale(coeff(2)) + Form::generator(g, 1).scale(coeff(3));
    Multivector gbiv = Multivector::zero(g, 2);
    gbiv.add_term({0, 1}, gx * gx);
    Scalar lhs = poisson_bracket(dT_mv(gbiv), iota_T(mu).to_scalar(), iota_T(eta).to_scalar());
    Scalar rhs = iota_T(one_form_bracket(gbiv, mu, eta)).to_scalar();
    s.req(lhs == rhs, "fiber-linear bracket identity fails with general coefficients");
}

void s_field_invariance(Suite& s) {
    auto corpus = poisson_corpus();
    for (int t = 0; t < s.trials; ++t) {
        const auto& e = corpus[static_cast<size_t>(t) % corpus.size()];
        const ChartPtr& c = e.biv.chart();
        Multivector X = t % 2 == 0
                            ? hamiltonian_field(e.biv, s.rng.polynomial(c->syms, c->dim(), 2, 2))
                            : random_mv(s.rng, c, 1);
        CheckResult canon = canonical_field_check(X, e.biv);
        const bool lag = lagrangian_section_check(X, e.biv);
        s.req(canon.ok == lag,
              s.tag(t) + ": section criterion disagrees with the bracket routes on " + e.label);
        if (t % 2 == 0)
            s.req(canon.ok, s.tag(t) + ": a bracket-generated field does not preserve " +
                                e.label + (canon.witness.empty() ? "" : ": " + canon.witness));
    }
    s.add_trials(s.trials);
}

void s_group_multiplicativity(Suite& s) {
    {
        // Affine line group: chart (a, b), product (a a', a b' + b).
        ChartPtr g2 = make_chart("affine_pair", {"a1", "b1", "a2", "b2"});
        ChartPtr g = affine_group_biv().chart();
        Scalar a1 = g2->coord(0), b1 = g2->coord(1), a2 = g2->coord(2), b2 = g2->coord(3);
        PolyMap mult = make_poly_map(g2, g, {a1 * a2, a1 * b2 + b1});
        Multivector pair_biv = Multivector::zero(g2, 2);
        pair_biv.add_term({0, 1}, a1 * a1 - a1);
        pair_biv.add_term({2, 3}, a2 * a2 - a2);
        s.req(poisson_map_check(mult, pair_biv, affine_group_biv()),
              "affine group product does not intertwine the structures");
        s.req(multivector_related(tangent_poly_map(mult), dT_mv(pair_biv),
                                  dT_mv(affine_group_biv()), nullptr),
              "tangent of the affine product does not intertwine the lifted structures");
    }
    {
        // Nilpotent group: product (x+x', y+y', z+z'+x y').
        ChartPtr g2 = make_chart("heis_pair", {"x1", "y1", "z1", "x2", "y2", "z2"});
        ChartPtr g = heisenberg_biv().chart();
        Scalar x1 = g2->coord(0), y1 = g2->coord(1), z1 = g2->coord(2);
        Scalar x2 = g2->coord(3), y2 = g2->coord(4), z2 = g2->coord(5);
        PolyMap mult = make_poly_map(g2, g, {x1 + x2, y1 + y2, z1 + z2 + x1 * y2});
        Multivector pair_biv = Multivector::zero(g2, 2);
        pair_biv.add_term({0, 2}, x1);
        pair_biv.add_term({1, 2}, y1);
        pair_biv.add_term({3, 5}, x2);
        pair_biv.add_term({4, 5}, y2);
        s.req(poisson_map_check(mult, pair_biv, heisenberg_biv()),
              "nilpotent group product does not intertwine the structures");
        s.req(multivector_related(tangent_poly_map(mult), dT_mv(pair_biv),
                                  dT_mv(heisenberg_biv()), nullptr),
              "tangent of the nilpotent product does not intertwine the lifted structures");
    }
    // Tangent algebra blocks: dotted copy acts on the hatted abelian copy.
    for (const LieAlgebra& g :
         {so3_algebra(), wedge_basis_su2(), affine_algebra(), heisenberg_algebra()}) {
        LieAlgebra tg = tangent_lie_algebra(g);
        const int n = g.dim();
        bool ok = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    ok = ok && tg.c[i][j][k] == g.c[i][j][k];
                    ok = ok && tg.c[i][j][n + k] == 0;
                    ok = ok && tg.c[i][n + j][n + k] == g.c[i][j][k];
                    ok = ok && tg.c[i][n + j][k] == 0;
                    ok = ok && tg.c[n + i][n + j][k] == 0 && tg.c[n + i][n + j][n + k] == 0;
                }
        s.req(ok, "tangent algebra blocks are not the expected split extension");
    }
}

void s_tangent_cobracket_formula(Suite& s) {
    for (const auto& [label, cb] : bialgebra_corpus()) {
        const int n = cb.g.dim();
        Cobracket tcb = tangent_cobracket(cb);
        bool ok = true;
        Cubic expect = cubic_zero(2 * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    expect[i][n + j][k] = cb.d[i][j][k];
                    expect[n + j][i][k] = -cb.d[i][j][k];
                    expect[n + i][n + j][n + k] = cb.d[i][j][k];
                }
        ok = tcb.d == expect;
        s.req(ok, "lifted cobracket blocks are wrong for " + label);
        s.req(validate_bialgebra(tcb), "lifted cobracket is not a bialgebra for " + label);
        // Dual compatibility: dual of the lift equals the lift of the dual up
        // to the swap of dotted and hatted slots.
        std::vector<std::string> dn;
        for (const auto& nm : cb.g.names) dn.push_back(nm + "*");
        LieAlgebra dual_then_lift = tangent_lie_algebra(dual_algebra(cb, dn));
        std::vector<std::string> dn2;
        for (const auto& nm : tcb.g.names) dn2.push_back(nm + "*");
        LieAlgebra lift_then_dual = dual_algebra(tcb, dn2);
        auto sw = [n](int i) { return i < n ? i + n : i - n; };
        bool okd = true;
        for (int i = 0; i < 2 * n; ++i)
            for (int j = 0; j < 2 * n; ++j)
                for (int k = 0; k < 2 * n; ++k)
                    okd = okd &&
                          dual_then_lift.c[sw(i)][sw(j)][sw(k)] == lift_then_dual.c[i][j][k];
        s.req(okd, "dual of the lift is not the swapped lift of the dual for " + label);
    }
}

void s_rmatrix_lift(Suite& s) {
    struct Fixed {
        LieAlgebra g;
        Mat r;
    };
    std::vector<Fixed> cases;
    {
        Mat r = rmatrix_zero(3);
        set_r(r, 0, 1, 1);
        cases.push_back({so3_algebra(), r});
        cases.push_back({heisenberg_algebra(), r});
    }
    cases.push_back({wedge_basis_su2(), wedge_rmatrix_su2()});
    {
        Mat r = rmatrix_zero(2);
        set_r(r,0, 1, 1);
        cases.push_back({affine_algebra(), r});
    }
    const int extra = std::max(1, s.trials / 10);
    for (int t = 0; t < extra; ++t) {
        Mat r = rmatrix_zero(3);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) set_r(r, i, j, s.rng.rational(-2, 2, 2));
        cases.push_back({so3_algebra(), r});
    }
    for (size_t k = 0; k < cases.size(); ++k) {
        const auto& [g, r] = cases[k];
        const int n = g.dim();
        s.req(gybe_check(g, r), "case " + std::to_string(k) + ": triangle condition fails");
        Mat R = lift_rmatrix(g, r);
        bool blocks = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                blocks = blocks && R[i][n + j] == r[i][j] && R[n + j][i] == -r[i][j];
                blocks = blocks && R[i][j] == 0 && R[n + i][n + j] == 0;
            }
        s.req(blocks, "case " + std::to_string(k) + ": lifted r-matrix blocks are wrong");
        LieAlgebra tg = tangent_lie_algebra(g);
        s.req(gybe_check(tg, R),
              "case " + std::to_string(k) + ": lifted r-matrix fails the triangle condition");
        s.req(coboundary_cobracket(tg, R).d == tangent_cobracket(coboundary_cobracket(g, r)).d,
              "case " + std::to_string(k) +
                  ": coboundary of the lift differs from the lift of the coboundary");
    }
    s.add_trials(extra);
}

void s_coboundary_properties(Suite& s) {
    const std::vector<LieAlgebra> algs = {so3_algebra(), wedge_basis_su2(), affine_algebra(),
                                          heisenberg_algebra()};
    for (int t = 0; t < s.trials; ++t) {
        const LieAlgebra& g = algs[static_cast<size_t>(t) % algs.size()];
        const int n = g.dim();
        Mat r = rmatrix_zero(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) set_r(r, i, j, s.rng.rational(-2, 2, 2));
        Cobracket cb = coboundary_cobracket(g, r);
        s.req(cocycle_check(n, g.c, cb.d), s.tag(t) + ": a coboundary is not a cocycle");
        BialgebraVerdict v = bialgebra_verdict(cb);
        s.req(gybe_check(g, r) == v.cojacobi,
              s.tag(t) + ": triangle condition disagrees with the co-Jacobi identity");
    }
    // Exact self-bracket pins for decomposable r-matrices.
    {
        Mat r = rmatrix_zero(3);
        set_r(r, 0, 1, 1);
        Cubic t1 = algebraic_schouten(so3_algebra(), r);
        s.req(t1[0][1][2] == 2, "rotation self-bracket is not twice the volume element");
        Cubic t2 = algebraic_schouten(heisenberg_algebra(), r);
        s.req(t2[0][1][2] == 2, "nilpotent self-bracket is not twice the volume element");
    }
    {
        Mat r = rmatrix_zero(2);
        set_r(r, 0, 1, 1);
        Cubic t3 = algebraic_schouten(affine_algebra(), r);
        bool zero = true;
        for (const auto& pl : t3)
            for (const auto& row : pl)
                for (const Rat& v : row) zero = zero && v == 0;
        s.req(zero, "affine r-matrix does not satisfy the classical triangle identity");
    }
    s.add_trials(s.trials);
}

void s_lifted_distribution(Suite& s) {
    // Distribution spanned by x d/dx and x^2 d/dx on the line; its lift is
    // spanned by the vertical and complete lifts of the generators.
    ChartPtr line = make_chart("line1", {"x"});
    ChartPtr tl = tangent_chart(line);
    Scalar x = line->coord(0);
    std::vector<Multivector> gens;
    for (const Scalar& c : {x, x * x}) {
        Multivector X = Multivector::generator(line, 0).scale(c);
        gens.push_back(vT_mv(X));
        gens.push_back(dT_mv(X));
    }
    auto rank_at_pt = [&](const Rat& px, const Rat& pv) {
        Mat rows;
        for (const auto& f : gens) {
            Vec row;
            for (int i = 0; i < 2; ++i) row.push_back(f.comp({i}).eval({px, pv}));
            rows.push_back(row);
        }
        return mat_rank(rows);
    };
    s.req(rank_at_pt(1, 1) == 2, "lifted span is not full at a generic point");
    s.req(rank_at_pt(0, 1) == 1, "lifted span does not drop to one on the fiber over zero");
    s.req(rank_at_pt(0, 0) == 0, "lifted span does not vanish at the zero vector");
    // Pairing rules between lifted forms and lifted fields.
    ChartPtr m = dim_chart(s.dim);
    ChartPtr tm = tangent_chart(m);
    for (int t = 0; t < s.trials; ++t) {
        Multivector X = random_mv(s.rng, m, 1);
        Form mu = random_form(s.rng, m, 1);
        Scalar base = pair_full(X, mu);
        s.req(pair_full(vT_mv(X), vT_form(mu)).is_zero(),
              s.tag(t) + ": vertical/vertical pairing is nonzero");
        s.req(pair_full(dT_mv(X), dT_form(mu)) == dT_scalar(tm, base),
              s.tag(t) + ": complete/complete pairing is not the lifted pairing");
        s.req(pair_full(dT_mv(X), vT_form(mu)) == vT_scalar(tm, base),
              s.tag(t) + ": vertical form against complete field pairing");
        s.req(pair_full(vT_mv(X), dT_form(mu)) == vT_scalar(tm, base),
              s.tag(t) + ": complete form against vertical field pairing");
    }
    s.add_trials(s.trials);
}

void s_lift_contractions(Suite& s) {
    ChartPtr m = dim_chart(s.dim);
    for (int t = 0; t < s.trials; ++t) {
        Multivector biv = random_mv(s.rng, m, 2, 2, 3);
        Form mu = random_form(s.rng, m, 1);
        s.req(contract_form_into_mv(vT_form(mu), dT_mv(biv)) ==
                  vT_mv(contract_form_into_mv(mu, biv)),
              s.tag(t) + ": vertical form into lifted bivector");
        s.req(contract_form_into_mv(dT_form(mu), dT_mv(biv)) ==
                  dT_mv(contract_form_into_mv(mu, biv)),
              s.tag(t) + ": complete form into lifted bivector");
    }
    s.add_trials(s.trials);
}

void s_rank_doubling(Suite& s) {
    auto corpus = poisson_corpus();
    const int per = std::max(2, s.trials / static_cast<int>(corpus.size()));
    for (const auto& e : corpus) {
        const ChartPtr& c = e.biv.chart();
        const int n = c->dim();
        Multivector lift = dT_mv(e.biv);
        for (int t = 0; t < per; ++t) {
            Vec x = random_point(s.rng, n);
            for (int guard = 0; e.singular(x) && guard < 32; ++guard)
                x = random_point(s.rng, n);
            if (e.singular(x)) continue;
            s.req(rank_at(e.biv, x) == e.regular_rank,
                  e.label + ": rank off the singular locus is not " +
                      std::to_string(e.regular_rank));
            Vec xv = x;
            Vec v = random_point(s.rng, n);
            xv.insert(xv.end(), v.begin(), v.end());
            s.req(rank_at(lift, xv) == 2 * e.regular_rank,
                  e.label + ": lifted rank is not doubled at a regular point");
        }
        s.add_trials(per);
    }
}

void s_casimir_lifts(Suite& s) {
    // Linear rotation-dual chart: the squared radius generates Casimirs.
    Multivector su2 = rotation_dual();
    const ChartPtr& c = su2.chart();
    ChartPtr tc = tangent_chart(c);
    Multivector lifted = dT_mv(su2);
    Scalar f0 = c->coord(0) * c->coord(0) + c->coord(1) * c->coord(1) +
                c->coord(2) * c->coord(2);
    for (const Scalar& f : {f0, f0 * f0, c->constant(1) + f0 * Rat(3)}) {
        s.req(is_casimir(su2, f), "radius polynomial is not central");
        s.req(is_casimir(lifted, vT_scalar(tc, f)),
              "vertical lift of a central function is not central for the lifted structure");
        s.req(is_casimir(lifted, dT_scalar(tc, f)),
              "complete lift of a central function is not central for the lifted structure");
    }
    s.req(!is_casimir(su2, c->coord(0)), "a coordinate is central on the rotation dual");
    s.req(!is_casimir(lifted, vT_scalar(tc, c->coord(0))),
          "lift of a non-central function is central");
    // Quadratic chart: the full squared radius is central.
    Multivector q4 = quadratic_r4();
    const ChartPtr& qc = q4.chart();
    ChartPtr tqc = tangent_chart(qc);
    Multivector qlift = dT_mv(q4);
    Scalar c1 = qc->zero();
    for (int i = 0; i < 4; ++i) c1 += qc->coord(i) * qc->coord(i);
    for (const Scalar& f : {c1, c1 * c1}) {
        s.req(is_casimir(q4, f), "quadratic-chart radius is not central");
        s.req(is_casimir(qlift, vT_scalar(tqc, f)), "vertical lift of the radius not central");
        s.req(is_casimir(qlift, dT_scalar(tqc, f)), "complete lift of the radius not central");
    }
    // Random functions: centrality always transfers to both lifts.
    int checked = 0;
    for (int t = 0; t < s.trials; ++t) {
        Scalar h = s.rng.polynomial(c->syms, 3, 2, 2);
        if (!is_casimir(su2, h)) continue;
        ++checked;
        s.req(is_casimir(lifted, vT_scalar(tc, h)) && is_casimir(lifted, dT_scalar(tc, h)),
              s.tag(t) + ": sampled central function with non-central lift");
    }
    (void)checked;
    s.add_trials(s.trials);
}

void s_linearization_bridge(Suite& s) {
    for (const auto& [label, cb] : bialgebra_corpus()) {
        Multivector lin = linear_poisson_of(cb, "g");
        Multivector frozen = linearize_at(lin, chart_zeros(lin.chart()));
        s.req(cubic_from_linear_bivector(frozen) == cb.d,
              "linearization does not recover the cobracket constants for " + label);
    }
    {
        // Affine group: the structure linearized at the unit is the linear
        // structure of the coboundary cobracket.
        Multivector biv = affine_group_biv();
        std::vector<Scalar> unit = {biv.chart()->constant(1), biv.chart()->zero()};
        Mat r = rmatrix_zero(2);
        set_r(r, 0, 1, 1);
        Cobracket cb = coboundary_cobracket(affine_algebra(), r);
        s.req(cubic_from_linear_bivector(linearize_at(biv, unit)) == cb.d,
              "affine group: unit linearization differs from the coboundary constants");
    }
    {
        Multivector biv = heisenberg_biv();
        Mat r = rmatrix_zero(3);
        set_r(r, 0, 1, 1);
        Cobracket cb = coboundary_cobracket(heisenberg_algebra(), r);
        s.req(cubic_from_linear_bivector(linearize_at(biv, chart_zeros(biv.chart()))) == cb.d,
              "nilpotent group: unit linearization differs from the coboundary constants");
    }
}

void s_rotation_dual_example(Suite& s) {
    Multivector biv = rotation_dual();
    const ChartPtr& c = biv.chart();
    ChartPtr tc = tangent_chart(c);
    s.req(is_poisson(biv), "rotation-dual bivector fails the Jacobi identity");
    // Lift against the strict-component expansion.
    Multivector expect = Multivector::zero(tc, 2);
    struct Row {
        int i, j;
        Scalar a;
    };
    const std::vector<Row> rows = {{0, 1, c->coord(2)}, {1, 2, c->coord(0)},
                                   {2, 0, c->coord(1)}};
    for (const auto& row : rows) {
        Scalar av = vT_scalar(tc, row.a);
        expect.add_term({row.i, 3 + row.j}, av);
        expect.add_term({3 + row.i, row.j}, av);
        Scalar dotted = tc->zero();
        for (int k = 0; k < 3; ++k)
            dotted += vT_scalar(tc, row.a.partial(k)) * tc->coord(3 + k);
        expect.add_term({3 + row.i, 3 + row.j}, dotted);
    }
    Multivector lifted = tangent_poisson(biv);
    s.req(lifted == expect, "lifted rotation-dual bivector: " + mv_diff(lifted, expect));
    s.req(lifted == dT_mv(biv), "two lift routes disagree");
    // Central functions and their lifts.
    Scalar f0 = c->coord(0) * c->coord(0) + c->coord(1) * c->coord(1) +
                c->coord(2) * c->coord(2);
    s.req(is_casimir(biv, f0), "squared radius is not central");
    Scalar f1 = tc->coord(0) * tc->coord(3) + tc->coord(1) * tc->coord(4) +
                tc->coord(2) * tc->coord(5);
    s.req(is_casimir(lifted, vT_scalar(tc, f0)), "pullback of the radius is not central");
    s.req(is_casimir(lifted, dT_scalar(tc, f0)), "lift of the radius is not central");
    s.req(is_casimir(lifted, f1), "the radius pairing is not central");
    s.req(dT_scalar(tc, f0) == f1 * Rat(2), "lifted radius is not twice the pairing");
    // Rank pins and the dotted linearization at the origin.
    s.req(rank_at(biv, {Rat(1), Rat(0), Rat(0)}) == 2, "rank at a unit point is not 2");
    s.req(rank_at(biv, {Rat(0), Rat(0), Rat(0)}) == 0, "rank at the origin is not 0");
    Multivector lin = linearize_at(biv, chart_zeros(c));
    const ChartPtr& lc = lin.chart();
    Multivector dotted = Multivector::zero(lc, 2);
    dotted.add_term({0, 1}, lc->coord(2));
    dotted.add_term({1, 2}, lc->coord(0));
    dotted.add_term({2, 0}, lc->coord(1));
    s.req(lin == dotted, "origin linearization is not the dotted copy of the structure");
}

void s_quadratic_r4_example(Suite& s) {
    Multivector biv = quadratic_r4();
    s.req(is_poisson(biv), "quadratic bivector fails the Jacobi identity");
    // Rank stratification: zero exactly where both distinguished coordinates
    // vanish, two elsewhere.
    const std::vector<Vec> on = {{Rat(0), Rat(0), Rat(0), Rat(0)},
                                 {Rat(1), Rat(2), Rat(0), Rat(0)},
                                 {Rat(-1), Rat(1) / 2, Rat(0), Rat(0)},
                                 {Rat(3), Rat(-2), Rat(0), Rat(0)},
                                 {Rat(1) / 3, Rat(5), Rat(0), Rat(0)}};
    const std::vector<Vec> off = {{Rat(0), Rat(0), Rat(1), Rat(0)},
                                  {Rat(1), Rat(1), Rat(0), Rat(1)},
                                  {Rat(2), Rat(-1), Rat(1) / 2, Rat(1)},
                                  {Rat(0), Rat(3), Rat(2), Rat(-1)},
                                  {Rat(1), Rat(1), Rat(1), Rat(1)}};
    for (const auto& p : on)
        s.req(rank_at(biv, p) == 0, "rank is nonzero on the degenerate plane");
    for (const auto& p : off)
        s.req(rank_at(biv, p) == 2, "rank is not 2 away from the degenerate plane");
    // Linearization along the unit circle of the degenerate plane, with the
    // circle point kept symbolic.
    ChartPtr cp = make_chart("quad4p", {"x1", "x2", "x3", "x4"}, {"c", "s"});
    Multivector bivp = Multivector::zero(cp, 2);
    bivp.add_term({0, 1}, -(cp->coord(2) * cp->coord(2) + cp->coord(3) * cp->coord(3)));
    bivp.add_term({0, 2}, cp->coord(1) * cp->coord(2));
    bivp.add_term({0, 3}, cp->coord(1) * cp->coord(3));
    bivp.add_term({1, 2}, -(cp->coord(0) * cp->coord(2)));
    bivp.add_term({1, 3}, -(cp->coord(0) * cp->coord(3)));
    Scalar pc = Scalar::variable(cp->syms, 4), ps = Scalar::variable(cp->syms, 5);
    Multivector linp = linearize_at(bivp, {pc, ps, cp->zero(), cp->zero()});
    const ChartPtr& lc = linp.chart();
    Scalar lpc = Scalar::variable(lc->syms, 4), lps = Scalar::variable(lc->syms, 5);
    Multivector expect = Multivector::zero(lc, 2);
    expect.add_term({0, 2}, lps * lc->coord(2));
    expect.add_term({0, 3}, lps * lc->coord(3));
    expect.add_term({1, 2}, -(lpc * lc->coord(2)));
    expect.add_term({1, 3}, -(lpc * lc->coord(3)));
    s.req(linp == expect,
          "linearization on the degenerate circle: " + mv_diff(linp, expect));
    // Dual bracket pins at the basepoint (1, 0, 0, 0).
    Multivector lin1 = linearize_at(biv, {biv.chart()->constant(1), biv.chart()->zero(),
                                          biv.chart()->zero(), biv.chart()->zero()});
    const ChartPtr& l1 = lin1.chart();
    s.req(poisson_bracket(lin1, l1->coord(3), l1->coord(1)) == l1->coord(3),
          "dual bracket pin {v4, v2} = v4 fails");
    s.req(poisson_bracket(lin1, l1->coord(2), l1->coord(1)) == l1->coord(2),
          "dual bracket pin {v3, v2} = v3 fails");
    s.req(poisson_bracket(lin1, l1->coord(3), l1->coord(2)).is_zero(),
          "dual bracket pin {v4, v3} = 0 fails");
    // The same constants arise as a coboundary cobracket: the linearization
    // embeds into the wedge-basis structure along the last three coordinates.
    LieAlgebra g = wedge_basis_su2();
    Mat r = wedge_rmatrix_su2();
    s.req(gybe_check(g, r), "wedge-basis r-matrix fails the triangle condition");
    Cobracket cb = coboundary_cobracket(g, r);
    Cubic expect_d = cubic_zero(3);
    expect_d[0][1][1] = -1;
    expect_d[1][0][1] = 1;
    expect_d[0][2][2] = -1;
    expect_d[2][0][2] = 1;
    s.req(cb.d == expect_d, "wedge-basis coboundary differs from the quadratic cobracket");
    Cubic lin_cubic = cubic_from_linear_bivector(lin1);
    bool match = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                match = match && cb.d[i][j][k] == lin_cubic[i + 1][j + 1][k + 1];
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            match = match && lin_cubic[0][j][k] == 0 && lin_cubic[j][0][k] == 0 &&
                    lin_cubic[j][k][0] == 0;
    s.req(match, "unit linearization does not embed the coboundary constants");
    // Lifted r-matrix on the tangent algebra.
    LieAlgebra tg = tangent_lie_algebra(g);
    Mat R = lift_rmatrix(g, r);
    s.req(gybe_check(tg, R), "lifted wedge-basis r-matrix fails the triangle condition");
    s.req(coboundary_cobracket(tg, R).d == tangent_cobracket(cb).d,
          "lifted coboundary differs from the lifted cobracket");
}

// ------------------------------ registry -----------------------------------

using SuiteFn = void (*)(Suite&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> reg = {
        {"ring-axioms", s_ring_axioms},
        {"adjunction", s_adjunction},
        {"schouten-2.8", s_schouten_graded},
        {"schouten-jacobi", s_schouten_jacobi},
        {"kappa-involution", s_kappa_involution},
        {"diagram-1.2", s_diagram_swap},
        {"diagram-1.3", s_diagram_covector},
        {"diagram-1.4", s_diagram_pairing},
        {"diagram-1.5", s_diagram_inverse},
        {"theorem-1.1", s_naturality},
        {"theorem-2.1", s_form_facets},
        {"theorem-2.2", s_field_facets},
        {"theorem-2.5", s_lift_bracket},
        {"prop-2.6", s_contraction_rules},
        {"relations-2.7", s_bracket_relations},
        {"prop-3.1", s_derivative_forms},
        {"theorem-3.2", s_derivative_fields},
        {"prop-3.3", s_invariance_pairs},
        {"example-3", s_line_decomposition},
        {"eq-4.4", s_jacobi_self_bracket},
        {"section-4", s_linear_characterization},
        {"theorem-4.3", s_two_form_diagram},
        {"theorem-4.4", s_anchor_relatedness},
        {"theorem-4.5", s_bivector_relation},
        {"formula-5.1", s_strict_lift_formula},
        {"relations-5.2", s_function_lift_brackets},
        {"theorem-5.1", s_fiberwise_brackets},
        {"example-5", s_quadratic_plane_example},
        {"theorem-6.2", s_field_invariance},
        {"section-7", s_group_multiplicativity},
        {"theorem-8.1", s_tangent_cobracket_formula},
        {"theorem-8.2", s_rmatrix_lift},
        {"section-8", s_coboundary_properties},
        {"section-9", s_lifted_distribution},
        {"prop-10.1", s_lift_contractions},
        {"theorem-10.2", s_rank_doubling},
        {"prop-10.3", s_casimir_lifts},
        {"prop-10.4", s_linearization_bridge},
        {"example-11.1", s_rotation_dual_example},
        {"example-11.2", s_quadratic_r4_example},
    };
    return reg;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        out.reserve(registry().size());
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

SuiteResult run_suite(const std::string& name, const RunOptions& opts) {
    for (const auto& [n, fn] : registry()) {
        if (n != name) continue;
        Suite s(name, opts);
        fn(s);
        return std::move(s.out);
    }
    throw EngineError("unknown verification suite '" + name + "'");
}

}  // namespace tanlift
