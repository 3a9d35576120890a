#include "tanlift/scalar.hpp"
#include "tanlift/chart.hpp"
#include "tanlift/rng.hpp"

#include <doctest.h>

#include <optional>

using namespace tanlift;

namespace {
ChartPtr plane() { return make_chart("plane_t", {"x", "y"}); }
}  // namespace

TEST_CASE("arithmetic matches hand-expanded polynomials") {
    ChartPtr m = plane();
    Scalar x = m->coord(0), y = m->coord(1);
    // (x + y)^2 = x^2 + 2xy + y^2, assembled independently term by term.
    Scalar lhs = (x + y) * (x + y);
    Scalar rhs = x * x + x * y * Rat(2) + y * y;
    CHECK(lhs == rhs);
    CHECK(lhs.str() == "x^2 + 2*x*y + y^2");
    // (x - y)(x + y) = x^2 - y^2.
    CHECK((x - y) * (x + y) == x * x - y * y);
    CHECK((x - x).is_zero());
    CHECK(x.pow(0) == m->constant(1));
    CHECK(x.pow(3) == x * x * x);
}

TEST_CASE("partial derivatives against hand results") {
    ChartPtr m = plane();
    Scalar x = m->coord(0), y = m->coord(1);
    Scalar f = x * x * y + y * y * Rat(3) - x * Rat(7) + m->constant(5);
    // df/dx = 2xy - 7, df/dy = x^2 + 6y, both written out directly.
    CHECK(f.partial(0) == x * y * Rat(2) - m->constant(7));
    CHECK(f.partial(1) == x * x + y * Rat(6));
    CHECK(f.partial(0).partial(1) == f.partial(1).partial(0));
    CHECK(m->constant(4).partial(0).is_zero());
}

TEST_CASE("evaluation is exact rational arithmetic") {
    ChartPtr m = plane();
    Scalar x = m->coord(0), y = m->coord(1);
    Scalar f = x * x * y - y * Rat(2);
    // f(3, 1/2) = 9/2 - 1 = 7/2.
    CHECK(f.eval({Rat(3), Rat(1) / 2}) == Rat(7) / 2);
    CHECK(f.eval({Rat(0), Rat(5)}) == Rat(-10));
}

TEST_CASE("substitution replaces one symbol and keeps the rest") {
    ChartPtr m = plane();
    Scalar x = m->coord(0), y = m->coord(1);
    Scalar f = x * x + x * y;
    std::vector<std::optional<Scalar>> repl(m->syms->size());
    repl[0] = y + m->constant(1);  // x := y + 1
    // (y+1)^2 + (y+1) y = 2y^2 + 3y + 1.
    CHECK(f.substitute(repl) == y * y * Rat(2) + y * Rat(3) + m->constant(1));
}

TEST_CASE("transport by name relabels symbols into a wider table") {
    ChartPtr m = plane();
    ChartPtr big = make_chart("plane_t_big", {"w", "x", "y"});
    Scalar f = m->coord(0) * m->coord(1);  // x*y on the small chart
    Scalar g = f.transport_by_name(big->syms);
    CHECK(g == big->coord(1) * big->coord(2));
    CHECK(g.eval({Rat(9), Rat(2), Rat(3)}) == Rat(6));
}

TEST_CASE("ring laws hold on seeded random polynomials") {
    ChartPtr m = make_chart("r3_t", {"x1", "x2", "x3"});
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        Scalar a = rng.polynomial(m->syms, 3, 3, 3);
        Scalar b = rng.polynomial(m->syms, 3, 3, 3);
        Scalar c = rng.polynomial(m->syms, 3, 3, 3);
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a * b).partial(1) == a.partial(1) * b + a * b.partial(1));
    }
}

TEST_CASE("constant detection and extraction") {
    ChartPtr m = plane();
    CHECK(m->constant(Rat(5) / 3).is_constant());
    CHECK(m->constant(Rat(5) / 3).constant_value() == Rat(5) / 3);
    CHECK(!(m->coord(0) + m->constant(1)).is_constant());
    CHECK(m->zero().is_zero());
    CHECK(m->zero().is_constant());
}
