#include "catch_amalgamated.hpp"

#include "kha/parse.hpp"
#include "kha/quiver.hpp"
#include "kha/quiver_json.hpp"

using namespace kha;

namespace {
RationalFunction rf(const std::string& s) { return parse_rational(s); }
const RationalFunction X = RationalFunction::var(VarId::aux("x"));
} // namespace

TEST_CASE("forms on the three reference quivers") {
    Quiver a1 = quiver_a1();
    DimVector v1{{"1", 1}}, v2{{"1", 2}}, w2{{"1", 2}};
    REQUIRE(euler_form(a1, v1, v2) == 2);
    REQUIRE(sym_form(a1, v1, v1) == 2);
    REQUIRE(nakajima_dim(a1, v1, v1) == 0);   // point
    REQUIRE(nakajima_dim(a1, v1, w2) == 2);   // T*P^1
    REQUIRE(nakajima_dim(a1, v2, w2) == 0);

    Quiver jordan = quiver_jordan();
    REQUIRE(euler_form(jordan, v1, v2) == 0);
    REQUIRE(sym_form(jordan, v2, v2) == 0);
    REQUIRE(nakajima_dim(jordan, v2, w2) == 8); // Hilbert-scheme-like growth 2wv

    Quiver a2 = quiver_a2();
    DimVector a{{"1", 1}, {"2", 1}}, b{{"1", 2}, {"2", 1}};
    REQUIRE(euler_form(a2, a, b) == 2 + 1 - 1);
    REQUIRE(euler_form(a2, b, a) == 2 + 1 - 2);
    REQUIRE(sym_form(a2, a, a) == 2 * 2 - 2);
    REQUIRE(nakajima_dim(a2, a, a) == 2 * 2 - 2);
}

TEST_CASE("zeta factors") {
    Quiver a1 = quiver_a1();
    REQUIRE(zeta(a1, "1", "1", X) == rf("(x^1 - qh^2) / (qh^1*(x^1 - 1))"));

    Quiver a2 = quiver_a2();
    REQUIRE(zeta(a2, "1", "2", X) == rf("qh^1*(1 - 1/(x^1*t[e]^1))"));
    REQUIRE(zeta(a2, "2", "1", X) == rf("1 - qh^2*x^1/t[e]^1"));
    REQUIRE(zeta(a2, "1", "1", X) == rf("(x^1 - qh^2) / (qh^1*(x^1 - 1))"));

    Quiver jordan = quiver_jordan();
    RationalFunction zj = zeta(jordan, "1", "1", X);
    REQUIRE(zj == rf("(x^1 - qh^2)*(1 - 1/(x^1*t[loop]^1))*(1 - qh^2*x^1/t[loop]^1) / (x^1 - 1)"));

    // the A1 kernel is the standard Hall-shuffle symmetric pair:
    // zeta(x) + zeta(1/x) = qh + qh^{-1}
    RationalFunction s = zeta(a1, "1", "1", X) + zeta(a1, "1", "1", X.inverse());
    REQUIRE(s == rf("qh^1 + qh^-1"));
}

TEST_CASE("gamma and sigma") {
    REQUIRE(gamma_factor(quiver_a1(), "1") == rf("1/(qh^1 - qh^-1)"));
    REQUIRE(sigma_factor(quiver_a1(), "1") == RationalFunction(1L));

    RationalFunction gj = gamma_factor(quiver_jordan(), "1");
    REQUIRE(gj == rf("(qh^1 - t[loop]^1*qh^-1)*(1 - t[loop]^1)/(qh^1 - qh^-1)"));
    REQUIRE(sigma_factor(quiver_jordan(), "1") ==
            rf("(1 - t[loop]^1)*(1 - qh^2/t[loop]^1)"));

    // at a vertex with no loops both collapse to the loop-free values
    Quiver a2 = quiver_a2();
    REQUIRE(gamma_factor(a2, "2") == rf("1/(qh^1 - qh^-1)"));
    REQUIRE(sigma_factor(a2, "2") == RationalFunction(1L));
}

TEST_CASE("quiver json parsing") {
    Quiver q = quiver_from_string(
        R"({"vertices":["1","2"],"edges":[{"src":"1","dst":"2","id":"e"}]})");
    REQUIRE(q.vertices().size() == 2);
    REQUIRE(q.edges().size() == 1);
    REQUIRE(q.edges_from_to("1", "2").size() == 1);
    REQUIRE(q.loops_at("1").empty());
    REQUIRE(!q.edge_free());

    REQUIRE_THROWS_AS(quiver_from_string("not json"), Error);
    REQUIRE_THROWS_AS(quiver_from_string(R"({"edges":[]})"), Error);
    try {
        quiver_from_string(R"({"vertices":["1"],"edges":[{"src":"1","dst":"9","id":"e"}]})");
        FAIL("expected unknown vertex");
    } catch (const Error& e) {
        REQUIRE(e.code() == std::string(errc::unknown_vertex));
    }
    try {
        quiver_from_string(
            R"({"vertices":["1"],"edges":[{"src":"1","dst":"1","id":"e"},{"src":"1","dst":"1","id":"e"}]})");
        FAIL("expected duplicate edge id");
    } catch (const Error& e) {
        REQUIRE(e.code() == std::string(errc::duplicate_edge));
    }
}

TEST_CASE("dimension vector parsing") {
    Quiver a2 = quiver_a2();
    DimVector v = dimvector_from_string(a2, "2,1");
    REQUIRE(dv_get(v, "1") == 2);
    REQUIRE(dv_get(v, "2") == 1);
    REQUIRE(dv_str(a2, v) == "(2,1)");
    REQUIRE(dimvector_from_string(a2, "1") == DimVector{{"1", 1}, {"2", 1}});
    REQUIRE(dv_get(dimvector_from_string(a2, "0,0"), "1") == 0);
    REQUIRE_THROWS_AS(dimvector_from_string(a2, "1,2,3"), Error);
}
