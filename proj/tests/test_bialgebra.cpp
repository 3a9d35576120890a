#include "tanlift/bialgebra.hpp"

#include <doctest.h>

using namespace tanlift;

namespace {

void set_c(Cubic& c, int i, int j, int k, const Rat& v) {
    c[i][j][k] = v;
    c[j][i][k] = -v;
}

Mat pair_r(int n, int i, int j, const Rat& v) {
    Mat r = rmatrix_zero(n);
    r[i][j] = v;
    r[j][i] = -v;
    return r;
}

// [e1,e2] = e3 cyclically.
LieAlgebra rot3() {
    Cubic c = cubic_zero(3);
    set_c(c, 0, 1, 2, Rat(1));
    set_c(c, 1, 2, 0, Rat(1));
    set_c(c, 2, 0, 1, Rat(1));
    return make_lie_algebra({"e1", "e2", "e3"}, c);
}

// [h,u] = -2v, [h,v] = 2u, [u,v] = -2h.
LieAlgebra split3() {
    Cubic c = cubic_zero(3);
    set_c(c, 0, 1, 2, Rat(-2));
    set_c(c, 0, 2, 1, Rat(2));
    set_c(c, 1, 2, 0, Rat(-2));
    return make_lie_algebra({"h", "u", "v"}, c);
}

// [p,q] = z, z central.
LieAlgebra heis3() {
    Cubic c = cubic_zero(3);
    set_c(c, 0, 1, 2, Rat(1));
    return make_lie_algebra({"p", "q", "z"}, c);
}

}  // namespace

TEST_CASE("constant tables pass the axioms and bad tables are rejected") {
    CHECK(lie_axioms(3, rot3().c));
    CHECK(lie_axioms(3, split3().c));
    CHECK(lie_axioms(3, heis3().c));
    Cubic aff = cubic_zero(2);
    set_c(aff, 0, 1, 1, Rat(1));
    CHECK(lie_axioms(2, aff));
    CHECK(make_lie_algebra({"X1", "X2"}, aff).dim() == 2);

    // x e1^e2 + y e2^e3 - z e1^e3 style constants break the Jacobi identity.
    Cubic bad = cubic_zero(3);
    set_c(bad, 0, 1, 0, Rat(1));
    set_c(bad, 1, 2, 1, Rat(1));
    set_c(bad, 2, 0, 2, Rat(1));
    CHECK(!lie_axioms(3, bad));
    CHECK_THROWS_AS((void)make_lie_algebra({"a", "b", "c"}, bad), EngineError);

    Cubic lop = cubic_zero(3);
    lop[0][1][0] = Rat(1);  // one-sided entry, not antisymmetric
    CHECK(!lie_axioms(3, lop));
}

TEST_CASE("coboundary cobrackets of a fixed element") {
    // ad_x(e1^e2) on the cyclic algebra: e1 -> e1^e3, e2 -> e2^e3, e3 -> 0.
    LieAlgebra g = rot3();
    Cobracket cb = coboundary_cobracket(g, pair_r(3, 0, 1, Rat(1)));
    CHECK(cb.d[0][2][0] == Rat(1));
    CHECK(cb.d[2][0][0] == Rat(-1));
    CHECK(cb.d[1][2][1] == Rat(1));
    CHECK(cb.d[2][1][1] == Rat(-1));
    CHECK(cb.d[0][1][0] == Rat(0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(cb.d[i][j][2] == Rat(0));
    BialgebraVerdict v = bialgebra_verdict(cb);
    CHECK(v.cocycle);
    CHECK(v.cojacobi);
    CHECK(v.dual_cocycle);
    CHECK(v.poisson_route);
    CHECK(validate_bialgebra(cb));

    // ad_x(-1/2 u^v) on the split algebra: h -> 0, u -> -h^u, v -> -h^v.
    LieAlgebra s = split3();
    Cobracket scb = coboundary_cobracket(s, pair_r(3, 1, 2, Rat(-1, 2)));
    CHECK(scb.d[0][1][1] == Rat(-1));
    CHECK(scb.d[1][0][1] == Rat(1));
    CHECK(scb.d[0][2][2] == Rat(-1));
    CHECK(scb.d[2][0][2] == Rat(1));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(scb.d[i][j][0] == Rat(0));
    CHECK(validate_bialgebra(scb));
    // Its dual is the solvable algebra [f0,f1] = -f1, [f0,f2] = -f2.
    LieAlgebra dual = dual_algebra(scb, {"f0", "f1", "f2"});
    CHECK(dual.c[0][1][1] == Rat(-1));
    CHECK(dual.c[0][2][2] == Rat(-1));
    for (int k = 0; k < 3; ++k) CHECK(dual.c[1][2][k] == Rat(0));
}

TEST_CASE("cobrackets that are not cocycles fail exactly that verdict") {
    Cubic d = cubic_zero(3);
    d[1][2][0] = Rat(1);
    d[2][1][0] = Rat(-1);
    Cobracket cb = make_cobracket(rot3(), d);
    BialgebraVerdict v = bialgebra_verdict(cb);
    CHECK(!v.cocycle);
    CHECK(v.cojacobi);  // single dual bracket [f2,f3] = f1 is a Lie bracket
    CHECK(!validate_bialgebra(cb));
}

TEST_CASE("the doubled algebra and the lifted cobracket") {
    LieAlgebra g = rot3();
    LieAlgebra tg = tangent_lie_algebra(g);
    CHECK(tg.dim() == 6);
    // Dotted copy, mixed block, and the zero hatted/hatted block.
    CHECK(tg.c[0][1][2] == Rat(1));
    CHECK(tg.c[0][4][5] == Rat(1));
    CHECK(tg.c[4][0][5] == Rat(-1));
    CHECK(tg.c[3][1][5] == Rat(1));
    for (int k = 0; k < 6; ++k) CHECK(tg.c[3][4][k] == Rat(0));
    CHECK(tg.c[0][1][5] == Rat(0));

    Cobracket cb = coboundary_cobracket(g, pair_r(3, 0, 1, Rat(1)));
    Cobracket tcb = tangent_cobracket(cb);
    CHECK(validate_bialgebra(tcb));
    // delta_T on the plain level splits across the two copies, and the
    // hatted level repeats the original coefficients.
    CHECK(tcb.d[0][5][0] == Rat(1));
    CHECK(tcb.d[5][0][0] == Rat(-1));
    CHECK(tcb.d[1][5][1] == Rat(1));
    CHECK(tcb.d[3][5][3] == Rat(1));
    CHECK(tcb.d[4][5][4] == Rat(1));
    CHECK(tcb.d[0][2][0] == Rat(0));

    // Lifting the element and then taking its coboundary gives the same
    // cobracket as lifting the coboundary.
    Mat r = pair_r(3, 0, 1, Rat(1));
    Cobracket via_lift = coboundary_cobracket(tg, lift_rmatrix(g, r));
    CHECK(via_lift.d == tcb.d);
    CHECK(via_lift.g.c == tcb.g.c);
}

TEST_CASE("lifted elements pair the dotted copy against the hatted one") {
    LieAlgebra g = rot3();
    Mat r = pair_r(3, 0, 1, Rat(1));
    Mat R = lift_rmatrix(g, r);
    CHECK(R[0][4] == Rat(1));
    CHECK(R[4][0] == Rat(-1));
    CHECK(R[1][3] == Rat(-1));
    CHECK(R[3][1] == Rat(1));
    CHECK(R[0][3] == Rat(0));
    CHECK(R[0][1] == Rat(0));
    CHECK(R[3][4] == Rat(0));
    CHECK(gybe_check(g, r));
    CHECK(gybe_check(tangent_lie_algebra(g), R));
}

TEST_CASE("algebraic brackets of fixed elements") {
    // [e1^e2, e1^e2] = 2 e1^e2^e3 whenever [e1,e2] = e3 and the rest of the
    // products miss the pair.
    Cubic s1 = algebraic_schouten(rot3(), pair_r(3, 0, 1, Rat(1)));
    CHECK(s1[0][1][2] == Rat(2));
    CHECK(s1[1][0][2] == Rat(-2));
    CHECK(s1[1][2][0] == Rat(2));
    CHECK(s1[2][1][0] == Rat(-2));
    Cubic s2 = algebraic_schouten(heis3(), pair_r(3, 0, 1, Rat(1)));
    CHECK(s2[0][1][2] == Rat(2));

    Cubic aff = cubic_zero(2);
    set_c(aff, 0, 1, 1, Rat(1));
    LieAlgebra a = make_lie_algebra({"X1", "X2"}, aff);
    Cubic s3 = algebraic_schouten(a, pair_r(2, 0, 1, Rat(1)));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) CHECK(s3[i][j][k] == Rat(0));

    // The two-argument form is symmetric and extends the square.
    LieAlgebra g = rot3();
    Mat r1 = pair_r(3, 0, 1, Rat(1));
    Mat r2 = pair_r(3, 1, 2, Rat(1));
    CHECK(algebraic_schouten(g, r1, r2) == algebraic_schouten(g, r2, r1));
    CHECK(algebraic_schouten(g, r1, r1) == algebraic_schouten(g, r1));
}

TEST_CASE("cobrackets extend to linear structures on the dual chart") {
    LieAlgebra g = rot3();
    Cobracket cb = coboundary_cobracket(g, pair_r(3, 0, 1, Rat(1)));
    Multivector lp = linear_poisson_of(cb, "rot3_dual");
    CHECK(is_poisson(lp));
    CHECK(lp.chart()->coords == std::vector<std::string>{"e1", "e2", "e3"});
    // {x_i, x_j} = sum_k d[i][j][k] x_k, read back componentwise.
    CHECK(cubic_from_linear_bivector(lp) == cb.d);
    CHECK(poisson_bracket(lp, lp.chart()->coord(0), lp.chart()->coord(2)) ==
          lp.chart()->coord(0));
}
