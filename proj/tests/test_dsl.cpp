#include "tanlift/runner.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <string>

using namespace tanlift;

namespace {

// One script exercising every statement kind and most command verbs, chosen
// so that every check passes (the rotation structure, its quadratic Casimir,
// a hamiltonian field, a shear between plane structures, and the coboundary
// cobracket of e1^e2).
const char* kScript = R"(chart m (x, y) params (a);
chart m2 (u, v);
chart g3 (x1, x2, x3);
scalar f on m = x^2 + a*y;
scalar g0 on g3 = x1^2 + x2^2 + x3^2;
scalar h on g3 = (1/2)*x1^2;
form mu : 1 on g3 = x1 * dx2;
form nu : 1 on g3 = dx2;
mv X : 1 on g3 = x2 * (@x1) - x1 * (@x2);
poisson P on g3 = x3 * (@x1 ^ @x2) + x1 * (@x2 ^ @x3) + x2 * (@x3 ^ @x1);
poisson Q on m = @x ^ @y;
poisson W2 on m2 = @u ^ @v;
liealg g (e1, e2, e3) { [e1, e2] = e3; [e2, e3] = e1; [e3, e1] = e2; }
cobracket cb on g { [e1] = e1 ^ e3; [e2] = e2 ^ e3; [e3] = 0; }
rmatrix r on g = e1 ^ e2;
map phi : m -> g3 = (x, y, x*y);
map psi : m -> m2 = (x, y + x^2);
point p0 on g3 = (1, 0, 0);
dt mu;
vt mu;
it mu;
dt f;
lift-complete X;
lift-vertical X;
jacobi P;
bracket P mu nu;
bracket P g0 h;
ham P g0;
tangent-poisson P;
casimir P g0;
rank P at p0;
linearize P at p0;
canonical-field X P;
poisson-map psi Q W2;
check-diagram 1.2;
bialgebra validate cb;
bialgebra dual cb;
bialgebra tangent cb;
rmatrix gybe r;
rmatrix cobracket r;
rmatrix lift r;
rmatrix schouten r r;
print f;
print P;
print p0;
verify ring-axioms --trials 3 --dim 2;
)";

}  // namespace

TEST_CASE("printing a parsed script reaches a fixed point") {
    Script s1 = parse_script(kScript);
    std::string t1 = print_script(s1);
    Script s2 = parse_script(t1);
    std::string t2 = print_script(s2);
    CHECK(t1 == t2);
    CHECK(s1.statements.size() == s2.statements.size());
}

TEST_CASE("identical script and seed render byte-identical passing reports") {
    RunOptions opts;
    opts.seed = 5;
    opts.trials = 5;
    opts.dim = 3;
    Script s = parse_script(kScript);
    Report r1 = run_script(s, opts);
    Report r2 = run_script(s, opts);
    CHECK(r1.text() == r2.text());
    CHECK(r1.json() == r2.json());
    CHECK(r1.all_ok());
    CHECK(r1.count("error") == 0);
    CHECK(r1.count("fail") == 0);
    CHECK(r1.commands.size() == s.statements.size());

    // The JSON rendering keeps its structural contract.
    nlohmann::json j = nlohmann::json::parse(r1.json());
    CHECK(j["schema"] == 1);
    CHECK(j["seed"] == 5);
    CHECK(j["summary"]["ok"] == true);
    CHECK(j["commands"].size() == r1.commands.size());

    // The verify statement records its trial count.
    const CommandResult& last = r1.commands.back();
    CHECK(last.kind == "verify");
    CHECK(last.status == "pass");
    CHECK(last.trials > 0);
}

TEST_CASE("parse errors carry one-based locations") {
    try {
        (void)parse_script("chart m (x y);\n");
        FAIL("missing comma was accepted");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col == 12);
    }
    try {
        (void)parse_script("chart k (x, y);\nscalar f on k = ;\n");
        FAIL("empty expression was accepted");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 17);
    }
    try {
        (void)parse_script("chart k (x, y);\nscalar lift on k = x;\n");
        FAIL("reserved word was accepted as a name");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("reserved") != std::string::npos);
    }
    CHECK_THROWS_AS((void)parse_script("verify ring-axioms --bogus 3;\n"), ParseError);
    CHECK_THROWS_AS((void)parse_script("frobnicate x;\n"), ParseError);
}

TEST_CASE("execution records an error and continues with later statements") {
    Script s = parse_script(
        "chart m (x, y);\n"
        "jacobi nope;\n"
        "scalar f on m = x;\n"
        "print f;\n");
    Report rep = run_script(s, RunOptions{});
    REQUIRE(rep.commands.size() == 4);
    CHECK(rep.commands[0].status == "ok");
    CHECK(rep.commands[1].status == "error");
    CHECK(rep.commands[2].status == "ok");
    CHECK(rep.commands[3].status == "ok");
    CHECK(!rep.all_ok());
    CHECK(rep.count("error") == 1);
}

TEST_CASE("the suite registry is fixed and rejects unknown names") {
    const auto& names = suite_names();
    CHECK(names.size() == 40);
    CHECK(names.front() == "ring-axioms");
    CHECK(names.back() == "example-11.2");
    RunOptions opts;
    opts.trials = 2;
    CHECK_THROWS_AS((void)run_suite("no-such-suite", opts), EngineError);
    // Verbs reachable from the language include the verification entry point.
    const auto& verbs = command_verbs();
    CHECK(std::find(verbs.begin(), verbs.end(), "verify") != verbs.end());
    CHECK(std::find(verbs.begin(), verbs.end(), "tangent-poisson") != verbs.end());
}
