#include "tanlift/poisson.hpp"
#include "tanlift/cartan.hpp"

#include <doctest.h>

using namespace tanlift;

namespace {

ChartPtr xyz() { return make_chart("pois3", {"x", "y", "z"}); }

// z @x^@y + x @y^@z + y @z^@x, the linear structure with cyclic brackets.
Multivector rotation(const ChartPtr& m) {
    Multivector L = Multivector::zero(m, 2);
    L.add_term({0, 1}, m->coord(2));
    L.add_term({1, 2}, m->coord(0));
    L.add_term({0, 2}, -m->coord(1));
    return L;
}

// y @x^@y + x @y^@z: hand computation gives Jacobi defect -x @x^@y^@z.
Multivector skewed(const ChartPtr& m) {
    Multivector P = Multivector::zero(m, 2);
    P.add_term({0, 1}, m->coord(1));
    P.add_term({1, 2}, m->coord(0));
    return P;
}

}  // namespace

TEST_CASE("cyclic brackets, hamiltonian fields, and the quadratic casimir") {
    ChartPtr m = xyz();
    Scalar x = m->coord(0), y = m->coord(1), z = m->coord(2);
    Multivector L = rotation(m);
    CHECK(is_poisson(L));
    CHECK(poisson_bracket(L, x, y) == z);
    CHECK(poisson_bracket(L, y, z) == x);
    CHECK(poisson_bracket(L, z, x) == y);
    CHECK(poisson_bracket(L, y, x) == -z);
    // <H_z, dx> = {z,x} = y and <H_z, dy> = -{y,z} = -x.
    Multivector hz = Multivector::zero(m, 1);
    hz.add_term({0}, y);
    hz.add_term({1}, -x);
    CHECK(hamiltonian_field(L, z) == hz);
    Scalar f0 = x * x + y * y + z * z;
    CHECK(hamiltonian_field(L, f0).is_zero());
    CHECK(is_casimir(L, f0));
    CHECK(!is_casimir(L, x));
    // The hamiltonian field derives the bracket: H_f(g) = {f,g}.
    Scalar f = x * y, g = z * z + x;
    CHECK(pair_full(hamiltonian_field(L, f), differential(g)) == poisson_bracket(L, f, g));
}

TEST_CASE("the jacobi defect and the self-bracket always agree") {
    ChartPtr m = xyz();
    JacobiVerdict good = jacobi_verdict(rotation(m));
    CHECK(good.cyclic_ok);
    CHECK(good.schouten_ok);
    CHECK(good.cyclic_defect.is_zero());
    CHECK(good.self_bracket.is_zero());

    Multivector P = skewed(m);
    // Cyclic sum: only A^{2l} d_l A^{01} = A^{21} = -x survives.
    CHECK(jacobi_cyclic(P).comp({0, 1, 2}) == -m->coord(0));
    JacobiVerdict bad = jacobi_verdict(P);
    CHECK(!bad.cyclic_ok);
    CHECK(!bad.schouten_ok);
    CHECK(bad.self_bracket == bad.cyclic_defect.scale(Rat(2)));
    CHECK(!is_poisson(P));
    CHECK_THROWS_AS((void)require_poisson(P), EngineError);
}

TEST_CASE("one-form bracket pins and its lie-derivative route") {
    ChartPtr p = make_chart("pois2", {"x", "y"});
    Scalar x = p->coord(0);
    Multivector lam = Multivector::zero(p, 2);
    lam.add_term({0, 1}, x * x);  // x^2 @x^@y
    Form xdy = Form::zero(p, 1);
    xdy.add_term({1}, x);
    Form dy = Form::generator(p, 1);
    Form dx = Form::generator(p, 0);
    // [x dy, dy]: only -i_{lam dy} d(x dy) = x^2 i_{@x}(dx^dy) survives.
    Form e1 = Form::zero(p, 1);
    e1.add_term({1}, x * x);
    CHECK(one_form_bracket(lam, xdy, dy) == e1);
    // [x dy, dx] = d(-x^3) + i_{x^2 @y}(dx^dy) = -3x^2 dx + x^2 dx.
    Form e2 = Form::zero(p, 1);
    e2.add_term({0}, p->constant(-2) * x * x);
    CHECK(one_form_bracket(lam, xdy, dx) == e2);
    CHECK(one_form_bracket_lie(lam, xdy, dy) == e1);
    CHECK(one_form_bracket_lie(lam, xdy, dx) == e2);

    // Exact forms bracket to the exact form of the function bracket, and the
    // two routes agree on arbitrary polynomial forms.
    ChartPtr m = xyz();
    Multivector L = rotation(m);
    Rng rng(101);
    for (int t = 0; t < 12; ++t) {
        Scalar f = rng.polynomial(m->syms, 3, 2);
        Scalar g = rng.polynomial(m->syms, 3, 2);
        Form df = differential(f), dg = differential(g);
        CHECK(one_form_bracket(L, df, dg) == differential(poisson_bracket(L, f, g)));
        Form mu = Form::zero(m, 1), eta = Form::zero(m, 1);
        for (int i = 0; i < 3; ++i) {
            mu.add_term({i}, rng.polynomial(m->syms, 3, 2, 2));
            eta.add_term({i}, rng.polynomial(m->syms, 3, 2, 2));
        }
        CHECK(one_form_bracket(L, mu, eta) == one_form_bracket_lie(L, mu, eta));
    }
}

TEST_CASE("pointwise rank and the linear part at a zero") {
    ChartPtr m = xyz();
    Multivector L = rotation(m);
    CHECK(rank_at(L, {Rat(1), Rat(0), Rat(0)}) == 2);
    CHECK(rank_at(L, {Rat(0), Rat(2), Rat(0)}) == 2);
    CHECK(rank_at(L, {Rat(0), Rat(0), Rat(0)}) == 0);
    ChartPtr p = make_chart("pois2b", {"u", "v"});
    Multivector plane = wedge(Multivector::generator(p, 0), Multivector::generator(p, 1));
    CHECK(rank_at(plane, {Rat(0), Rat(0)}) == 2);

    // Linear components reproduce themselves on the dotted chart.
    Multivector lin = linearize_at(L, {m->zero(), m->zero(), m->zero()});
    const ChartPtr& c = lin.chart();
    CHECK(c->coords == std::vector<std::string>{"x_dot", "y_dot", "z_dot"});
    Multivector expect = Multivector::zero(c, 2);
    expect.add_term({0, 1}, c->coord(2));
    expect.add_term({1, 2}, c->coord(0));
    expect.add_term({0, 2}, -c->coord(1));
    CHECK(lin == expect);
}

TEST_CASE("the lifted bivector is fiberwise linear and obeys the bracket table") {
    ChartPtr m = xyz();
    Multivector L = rotation(m);
    Multivector TL = tangent_poisson(L);
    CHECK(is_poisson(TL));
    CHECK(is_linear_tangent_bivector(TL));
    ChartPtr tm = tangent_chart(m);
    Multivector bad = Multivector::zero(tm, 2);
    bad.add_term({0, 1}, tm->constant(1));  // plain/plain block
    CHECK(!is_linear_tangent_bivector(bad));

    Scalar f = m->coord(0) * m->coord(0), g = m->coord(0) * m->coord(1);
    CHECK(tangent_bracket_relations(L, f, g));
    Form mu = Form::zero(m, 1), eta = Form::zero(m, 1);
    mu.add_term({1}, m->coord(0));
    eta.add_term({2}, m->constant(1));
    CHECK(xi_bracket_formula(L, mu, eta));
    CHECK(characteristic_lift_check(L, mu));
}

TEST_CASE("fiber morphism relatedness holds exactly for integrable bivectors") {
    ChartPtr m = xyz();
    CHECK(anchor_related_check(rotation(m)));
    std::string w;
    CHECK(!anchor_related_check(skewed(m), &w));
    CHECK(!w.empty());
}

TEST_CASE("structure-preserving maps and fields") {
    ChartPtr s = make_chart("pois_src", {"u", "v"});
    ChartPtr d = make_chart("pois_dst", {"a", "b"});
    Multivector ps = wedge(Multivector::generator(s, 0), Multivector::generator(s, 1));
    Multivector pd = wedge(Multivector::generator(d, 0), Multivector::generator(d, 1));
    Scalar u = s->coord(0), v = s->coord(1);
    // A shear preserves the area bracket, a fiber square does not.
    CHECK(poisson_map_check(make_poly_map(s, d, {u, v + u * u}), ps, pd));
    std::string w;
    CHECK(!poisson_map_check(make_poly_map(s, d, {u, v * v}), ps, pd, &w));
    CHECK(!w.empty());

    // [x@x - y@y, @x^@y] = (-@x)^@y + @x^@y = 0, while x@x scales it.
    ChartPtr p = make_chart("pois2c", {"x", "y"});
    Multivector plane = wedge(Multivector::generator(p, 0), Multivector::generator(p, 1));
    Multivector good = Multivector::zero(p, 1);
    good.add_term({0}, p->coord(0));
    good.add_term({1}, -p->coord(1));
    Multivector scaling = Multivector::zero(p, 1);
    scaling.add_term({0}, p->coord(0));
    CHECK(canonical_field_check(good, plane).ok);
    CHECK(lagrangian_section_check(good, plane));
    CHECK(!canonical_field_check(scaling, plane).ok);
    CHECK(!lagrangian_section_check(scaling, plane));
    // Hamiltonian fields always qualify.
    ChartPtr m = xyz();
    Multivector L = rotation(m);
    CHECK(canonical_field_check(hamiltonian_field(L, m->coord(0) * m->coord(1)), L).ok);
}

TEST_CASE("linear bivectors round-trip through their structure constants") {
    ChartPtr m = xyz();
    Multivector L = rotation(m);
    Cubic c = cubic_from_linear_bivector(L);
    CHECK(c[0][1][2] == Rat(1));
    CHECK(c[1][0][2] == Rat(-1));
    CHECK(c[1][2][0] == Rat(1));
    CHECK(c[0][2][1] == Rat(-1));
    CHECK(linear_bivector_from(m, c) == L);
    LinearMorphismVerdict ok = linear_morphism_check(3, c);
    CHECK(ok.antisym);
    CHECK(ok.transfer);
    CHECK(ok.dual_antisym);
    CHECK(ok.dual_jacobi);

    // x @x^@y + y @y^@z - z @x^@z fails Jacobi; the morphism conditions and
    // the bivector verdict reject it together.
    Cubic b = cubic_zero(3);
    b[0][1][0] = Rat(1);
    b[1][0][0] = Rat(-1);
    b[1][2][1] = Rat(1);
    b[2][1][1] = Rat(-1);
    b[2][0][2] = Rat(1);
    b[0][2][2] = Rat(-1);
    LinearMorphismVerdict badv = linear_morphism_check(3, b);
    CHECK(badv.antisym);
    CHECK(!badv.transfer);
    CHECK(badv.dual_antisym);
    CHECK(!badv.dual_jacobi);
    CHECK(!is_poisson(linear_bivector_from(m, b)));
}
