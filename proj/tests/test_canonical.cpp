#include "tanlift/canonical.hpp"
#include "tanlift/tangent.hpp"

#include <doctest.h>

using namespace tanlift;

namespace {
ChartPtr r2() { return make_chart("r2_canon", {"x", "y"}); }
}  // namespace

TEST_CASE("degree-one flip exchanges foot velocity and fiber point") {
    ChartPtr m = r2();
    ChartPtr tm = tangent_chart(m);
    // Point of T(TM): foot (x, y, xdot, ydot) = (1, 2, 3, 4), fiber w = (5, 6)
    // on the undotted slots and (7, 8) on the dotted ones.
    MvPt u{make_base_pt(tm, {Rat(1), Rat(2), Rat(3), Rat(4)}), 1, {}};
    comp_put(u.w, {0}, Rat(5));
    comp_put(u.w, {1}, Rat(6));
    comp_put(u.w, {2}, Rat(7));
    comp_put(u.w, {3}, Rat(8));
    MvPt uu = as_iterated_point(kappa_r(u));
    // Base point survives; velocity and fiber point trade places.
    CHECK(uu.b.vals[0] == Rat(1));
    CHECK(uu.b.vals[1] == Rat(2));
    CHECK(uu.b.vals[2] == Rat(5));
    CHECK(uu.b.vals[3] == Rat(6));
    auto comp = [](const FiberComps& w, MultiIndex idx) {
        auto it = w.find(idx);
        return it == w.end() ? Rat(0) : it->second;
    };
    CHECK(comp(uu.w, {0}) == Rat(3));
    CHECK(comp(uu.w, {1}) == Rat(4));
    // The second-derivative slots are fixed by the flip.
    CHECK(comp(uu.w, {2}) == Rat(7));
    CHECK(comp(uu.w, {3}) == Rat(8));
}

TEST_CASE("flip is an involution and respects duality at every degree") {
    ChartPtr m = r2();
    Rng rng(71);
    CHECK(check_flip_involution(m, rng, 30).ok);
    CHECK(check_flip_duality(m, rng, 10).ok);
    ChartPtr m3 = make_chart("r3_canon", {"x1", "x2", "x3"});
    CHECK(check_flip_involution(m3, rng, 20).ok);
    CHECK(check_flip_duality(m3, rng, 6).ok);
}

TEST_CASE("flips respect the wedge on both sides") {
    ChartPtr m = r2();
    Rng rng(73);
    CHECK(check_flip_wedge(m, 1, 1, rng, 10).ok);
    CHECK(check_cotangent_flip_wedge(m, 1, 1, rng, 10).ok);
}

TEST_CASE("classical covector flip against its hand formula") {
    ChartPtr m = r2();
    ChartPtr tm = tangent_chart(m);
    // z in T(T*M): base (x, y) = (1, 2), covector p = (3, 4), velocities
    // dx = (5, 6), dp = (7, 8).
    FormPt a{make_base_pt(m, {Rat(1), Rat(2)}), 1, {}};
    comp_put(a.p, {0}, Rat(3));
    comp_put(a.p, {1}, Rat(4));
    TFormPt z{a, {Rat(5), Rat(6)}, {}};
    comp_put(z.dp, {0}, Rat(7));
    comp_put(z.dp, {1}, Rat(8));
    FormPt out = alpha_classic(z);
    // Image lives over (x, y, dx) with covector (dp, p).
    CHECK(same_chart(out.b.chart, tm));
    CHECK(out.b.vals == Vec{Rat(1), Rat(2), Rat(5), Rat(6)});
    auto comp = [](const FiberComps& w, MultiIndex idx) {
        auto it = w.find(idx);
        return it == w.end() ? Rat(0) : it->second;
    };
    CHECK(comp(out.p, {0}) == Rat(7));
    CHECK(comp(out.p, {1}) == Rat(8));
    CHECK(comp(out.p, {2}) == Rat(3));
    CHECK(comp(out.p, {3}) == Rat(4));
    // Round trip.
    TFormPt back = eps_classic(out);
    CHECK(eq(back, z));
}

TEST_CASE("canonical one-form and symplectic structure on the cotangent chart") {
    ChartPtr m = r2();
    ChartPtr cm = cotangent_chart(m);
    // theta = p_x dx + p_y dy; omega = -d theta pairs each dx with its dp.
    Form theta = liouville_form(m, 1);
    Form expect = Form::zero(cm, 1);
    expect.add_term({0}, cm->coord(2));
    expect.add_term({1}, cm->coord(3));
    CHECK(theta == expect);
    Form omega = canonical_symplectic(m);
    CHECK(omega.degree() == 2);
    CHECK(exterior_d(omega).is_zero());
    // omega = d(p dx) = dp ^ dx slotwise, i.e. -(dx ^ dp_x + dy ^ dp_y).
    Form alt = Form::zero(cm, 2);
    alt.add_term({0, 2}, cm->constant(1));
    alt.add_term({1, 3}, cm->constant(1));
    CHECK(omega == -alt);
    Multivector pb = canonical_poisson(m);
    CHECK(pb.degree() == 2);
    Multivector pb_expect = Multivector::zero(cm, 2);
    pb_expect.add_term({0, 2}, cm->constant(1));
    pb_expect.add_term({1, 3}, cm->constant(1));
    CHECK(pb == pb_expect);
}

TEST_CASE("naturality of the flip under a polynomial map") {
    ChartPtr src = make_chart("nat_src", {"u", "v"});
    ChartPtr dst = make_chart("nat_dst", {"x", "y"});
    Scalar u = src->coord(0), v = src->coord(1);
    PolyMap phi = make_poly_map(src, dst, {u * v, u + v});
    Rng rng(79);
    CHECK(check_flip_naturality(phi, 1, rng, 10).ok);
    CHECK(check_flip_naturality(phi, 2, rng, 10).ok);
}

TEST_CASE("facet diagrams and the tautological pullback on fixed forms") {
    ChartPtr m = r2();
    Rng rng(83);
    Form mu = Form::zero(m, 2);
    mu.add_term({0, 1}, m->coord(0));  // x dx^dy
    CHECK(check_lift_form_facet(mu, 1, rng, 4).ok);
    CHECK(check_lift_form_facet(mu, 2, rng, 4).ok);
    CHECK(check_iota_tautological(mu).ok);
    Multivector X = Multivector::zero(m, 2);
    X.add_term({0, 1}, m->coord(1));
    CHECK(check_lift_mv_facet(X, 1, rng, 4).ok);
    CHECK(check_lift_mv_facet(X, 2, rng, 4).ok);
}

TEST_CASE("closed two-forms are exactly the ones matching the canonical pullback") {
    ChartPtr m = r2();
    Rng rng(89);
    Form closed = Form::zero(m, 2);
    closed.add_term({0, 1}, m->constant(1));
    CHECK(check_lift_symplectic_pullback(closed).ok);
    CHECK(check_two_form_diagram(closed, rng, 6).ok);
    ChartPtr m3 = make_chart("r3_diag", {"x1", "x2", "x3"});
    Form open_form = Form::zero(m3, 2);
    open_form.add_term({1, 2}, m3->coord(0));  // x1 dx2^dx3, d != 0
    // The symbolic comparison tracks closedness (so it still passes), while
    // the pointwise diagram genuinely breaks on a non-closed form.
    CHECK(check_lift_symplectic_pullback(open_form).ok);
    CHECK(!check_two_form_diagram(open_form, rng, 6).ok);
}
