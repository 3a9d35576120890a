#include "tanlift/tangent.hpp"
#include "tanlift/cartan.hpp"
#include "tanlift/rng.hpp"

#include <doctest.h>

using namespace tanlift;

namespace {
ChartPtr r2() { return make_chart("r2_tan", {"x", "y"}); }
}  // namespace

TEST_CASE("scalar lifts on a fixed function") {
    ChartPtr m = r2();
    ChartPtr tm = tangent_chart(m);
    Scalar x = m->coord(0), y = m->coord(1);
    Scalar f = x * x * y;
    // Vertical lift is the pullback; written against the tangent coords.
    Scalar tx = tm->coord(0), ty = tm->coord(1), dx = tm->coord(2), dy = tm->coord(3);
    CHECK(vT_scalar(tm, f) == tx * tx * ty);
    // Complete lift is the fiber derivative: 2xy xdot + x^2 ydot.
    CHECK(dT_scalar(tm, f) == tx * ty * dx * Rat(2) + tx * tx * dy);
    // The two lifts of a constant: pullback stays, derivative dies.
    CHECK(vT_scalar(tm, m->constant(3)) == tm->constant(3));
    CHECK(dT_scalar(tm, m->constant(3)).is_zero());
}

TEST_CASE("field lifts on a fixed vector field") {
    ChartPtr m = r2();
    ChartPtr tm = tangent_chart(m);
    Scalar x = m->coord(0), y = m->coord(1);
    Multivector X = Multivector::generator(m, 0).scale(x * y);  // xy @x
    // Vertical lift: xy @xdot.
    Multivector vexp = Multivector::zero(tm, 1);
    vexp.add_term({2}, tm->coord(0) * tm->coord(1));
    CHECK(vT_mv(X) == vexp);
    // Complete lift: xy @x + (y xdot + x ydot) @xdot.
    Multivector dexp = Multivector::zero(tm, 1);
    dexp.add_term({0}, tm->coord(0) * tm->coord(1));
    dexp.add_term({2}, tm->coord(1) * tm->coord(2) + tm->coord(0) * tm->coord(3));
    CHECK(dT_mv(X) == dexp);
}

TEST_CASE("bivector lift expands by the strict component formula") {
    ChartPtr m = r2();
    ChartPtr tm = tangent_chart(m);
    Scalar x = m->coord(0);
    Multivector B = Multivector::zero(m, 2);
    B.add_term({0, 1}, x * x);
    // Oracle assembled by hand: x^2 (@x^@ydot + @xdot^@y) + 2x xdot @xdot^@ydot.
    Multivector expect = Multivector::zero(tm, 2);
    Scalar tx = tm->coord(0), tdx = tm->coord(2);
    expect.add_term({0, 3}, tx * tx);
    expect.add_term({2, 1}, tx * tx);
    expect.add_term({2, 3}, tx * tdx * Rat(2));
    CHECK(dT_mv(B) == expect);
}

TEST_CASE("form lifts: vertical is the base pullback, complete is a derivation") {
    ChartPtr m = r2();
    ChartPtr tm = tangent_chart(m);
    Scalar x = m->coord(0), y = m->coord(1);
    Form mu = Form::zero(m, 1);
    mu.add_term({0}, y);  // y dx
    // Pullback keeps the undotted slot.
    Form vexp = Form::zero(tm, 1);
    vexp.add_term({0}, tm->coord(1));
    CHECK(vT_form(mu) == vexp);
    // Complete lift: ydot dx + y dxdot.
    Form dexp = Form::zero(tm, 1);
    dexp.add_term({0}, tm->coord(3));
    dexp.add_term({2}, tm->coord(1));
    CHECK(dT_form(mu) == dexp);
    // Complete lift commutes with the exterior derivative.
    CHECK(exterior_d(dT_form(mu)) == dT_form(exterior_d(mu)));
}

TEST_CASE("vertical contraction is fiber-linear evaluation") {
    ChartPtr m = r2();
    ChartPtr tm = tangent_chart(m);
    Scalar x = m->coord(0);
    Form mu = Form::zero(m, 1);
    mu.add_term({1}, x);  // x dy
    // i_T(x dy) = x ydot as a function on the tangent chart.
    Form it = iota_T(mu);
    CHECK(it.degree() == 0);
    CHECK(it.to_scalar() == tm->coord(0) * tm->coord(3));
}

TEST_CASE("restriction to a section substitutes the field for the velocity") {
    ChartPtr m = r2();
    ChartPtr tm = tangent_chart(m);
    Scalar x = m->coord(0), y = m->coord(1);
    Multivector X = Multivector::generator(m, 0).scale(x) +
                    Multivector::generator(m, 1).scale(y * y);
    // f = xdot + x*ydot restricted along (x, y^2): x + x y^2.
    Scalar f = tm->coord(2) + tm->coord(0) * tm->coord(3);
    CHECK(restrict_to_section(X, f) == x + x * y * y);
}

TEST_CASE("section pullback of lifts recovers the Lie derivative") {
    ChartPtr m = r2();
    Rng rng(57);
    for (int t = 0; t < 10; ++t) {
        Multivector X = Multivector::zero(m, 1);
        X.add_term({static_cast<int>(rng.integer(0, 1))}, rng.polynomial(m->syms, 2, 2, 2));
        Form mu = Form::zero(m, 1);
        mu.add_term({static_cast<int>(rng.integer(0, 1))}, rng.polynomial(m->syms, 2, 2, 2));
        CHECK(pullback_form_along_field(X, dT_form(mu)) == lie_derivative_form(X, mu));
        CHECK(pullback_form_along_field(X, vT_form(mu)) == mu);
        Multivector lam = Multivector::zero(m, 2);
        lam.add_term({0, 1}, rng.polynomial(m->syms, 2, 2, 2));
        CHECK(pullback_mv_along_field(X, dT_mv(lam)) == lie_derivative_mv(X, lam));
        CHECK(pullback_mv_along_field(X, vT_mv(lam)) == lam);
    }
}

TEST_CASE("second order field pairs position with velocity") {
    ChartPtr m = r2();
    ChartPtr tm = tangent_chart(m);
    Multivector so = second_order_field(tm);
    // xdot @x + ydot @y.
    Multivector expect = Multivector::zero(tm, 1);
    expect.add_term({0}, tm->coord(2));
    expect.add_term({1}, tm->coord(3));
    CHECK(so == expect);
}
