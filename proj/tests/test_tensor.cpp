#include "tanlift/tensor.hpp"
#include "tanlift/rng.hpp"

#include <doctest.h>

using namespace tanlift;

namespace {

ChartPtr r3() { return make_chart("r3_tensor", {"x1", "x2", "x3"}); }

Multivector rnd_mv(Rng& rng, const ChartPtr& c, int deg) {
    Multivector out = Multivector::zero(c, deg);
    if (deg == 1) {
        out.add_term({static_cast<int>(rng.integer(0, 2))}, rng.polynomial(c->syms, 3, 2, 2));
        out.add_term({static_cast<int>(rng.integer(0, 2))}, rng.polynomial(c->syms, 3, 2, 2));
    } else if (deg == 2) {
        out.add_term({0, 1}, rng.polynomial(c->syms, 3, 2, 2));
        out.add_term({static_cast<int>(rng.integer(0, 1)), 2},
                     rng.polynomial(c->syms, 3, 2, 2));
    }
    return out;
}

}  // namespace

TEST_CASE("index normalization carries the permutation sign") {
    ChartPtr m = r3();
    Multivector a = Multivector::zero(m, 2);
    a.add_term({1, 0}, m->constant(1));  // @2^@1 = -@1^@2
    Multivector b = Multivector::zero(m, 2);
    b.add_term({0, 1}, m->constant(-1));
    CHECK(a == b);
    CHECK(a.comp({0, 1}) == m->constant(-1));
    // A repeated index annihilates the term.
    Multivector c = Multivector::zero(m, 2);
    c.add_term({1, 1}, m->coord(0));
    CHECK(c.is_zero());
    // Unordered insertion with three slots: (2,0,1) is an even permutation.
    Multivector d = Multivector::zero(m, 3);
    d.add_term({2, 0, 1}, m->constant(1));
    CHECK(d.comp({0, 1, 2}) == m->constant(1));
}

TEST_CASE("wedge on fixed tensors against hand expansion") {
    ChartPtr m = r3();
    Scalar x1 = m->coord(0), x2 = m->coord(1);
    Multivector e1 = Multivector::generator(m, 0);
    Multivector e2 = Multivector::generator(m, 1);
    Multivector e3 = Multivector::generator(m, 2);
    // (x1 e1 + e2) ^ (x2 e3) = x1 x2 e1^e3 + x2 e2^e3.
    Multivector lhs = wedge(e1.scale(x1) + e2, e3.scale(x2));
    Multivector rhs = Multivector::zero(m, 2);
    rhs.add_term({0, 2}, x1 * x2);
    rhs.add_term({1, 2}, x2);
    CHECK(lhs == rhs);
    // Graded commutativity: for two 1-fields X^Y = -(Y^X).
    CHECK(wedge(e1, e2) == -wedge(e2, e1));
    // A 1-field wedged with itself vanishes.
    CHECK(wedge(e1.scale(x1), e1.scale(x2)).is_zero());
}

TEST_CASE("wedge is associative and graded commutative on random tensors") {
    ChartPtr m = r3();
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        Multivector X = rnd_mv(rng, m, 1);
        Multivector Y = rnd_mv(rng, m, 1);
        Multivector Z = rnd_mv(rng, m, 1);
        CHECK(wedge(wedge(X, Y), Z) == wedge(X, wedge(Y, Z)));
        Multivector B = rnd_mv(rng, m, 2);
        // deg 1 against deg 2 commutes with sign (-1)^{1*2} = +1.
        CHECK(wedge(X, B) == wedge(B, X));
    }
}

TEST_CASE("full pairing of a 2-form with a 2-field, by hand") {
    ChartPtr m = r3();
    Scalar x1 = m->coord(0), x3 = m->coord(2);
    // X = x1 @1^@2, mu = x3 dx1^dx2: <X, mu> = x1*x3 (matching basis pair).
    Multivector X = Multivector::zero(m, 2);
    X.add_term({0, 1}, x1);
    Form mu = Form::zero(m, 2);
    mu.add_term({0, 1}, x3);
    CHECK(pair_full(X, mu) == x1 * x3);
    // Disjoint index sets pair to zero.
    Form nu = Form::zero(m, 2);
    nu.add_term({1, 2}, m->constant(1));
    CHECK(pair_full(X, nu).is_zero());
}

TEST_CASE("contraction is adjoint to the wedge") {
    ChartPtr m = r3();
    Rng rng(31);
    // <i_mu X, eta> = <X, mu ^ eta> with mu, eta 1-forms and X a 2-field.
    for (int t = 0; t < 20; ++t) {
        Multivector X = rnd_mv(rng, m, 2);
        Form mu = Form::zero(m, 1);
        mu.add_term({static_cast<int>(rng.integer(0, 2))}, rng.polynomial(m->syms, 3, 2, 2));
        Form eta = Form::zero(m, 1);
        eta.add_term({static_cast<int>(rng.integer(0, 2))}, rng.polynomial(m->syms, 3, 2, 2));
        CHECK(pair_full(contract_form_into_mv(mu, X), eta) == pair_full(X, wedge(mu, eta)));
    }
    // Hand pin: i_{dx1}(@1^@2) = @2.
    Multivector X = Multivector::zero(m, 2);
    X.add_term({0, 1}, m->constant(1));
    Form dx1 = Form::generator(m, 0);
    CHECK(contract_form_into_mv(dx1, X) == Multivector::generator(m, 1));
    // And i_{dx2}(@1^@2) = -@1.
    Form dx2 = Form::generator(m, 1);
    CHECK(contract_form_into_mv(dx2, X) == -Multivector::generator(m, 0));
}

TEST_CASE("scaling and degree bookkeeping") {
    ChartPtr m = r3();
    Multivector X = Multivector::zero(m, 2);
    X.add_term({0, 2}, m->coord(1));
    CHECK(X.degree() == 2);
    CHECK(X.scale(Rat(0)).is_zero());
    CHECK(X.scale(Rat(-1)) == -X);
    CHECK(Multivector::from_scalar(m, m->coord(0)).degree() == 0);
    CHECK(Multivector::from_scalar(m, m->coord(0)).to_scalar() == m->coord(0));
}
