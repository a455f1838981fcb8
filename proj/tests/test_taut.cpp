#include <catch2/catch_amalgamated.hpp>

#include "kha/parse.hpp"
#include "kha/quiver.hpp"
#include "kha/shuffle.hpp"
#include "kha/taut.hpp"

using namespace kha;

namespace {

RationalFunction rf(const std::string& num, const std::string& den = "1") {
    return RationalFunction(parse_laurent(num), parse_laurent(den));
}

RationalFunction uvar(long b, int e = 1) {
    return RationalFunction::var(VarId::u("1", b), e);
}

}  // namespace

TEST_CASE("kclass arithmetic, rank and duals", "[taut]") {
    KClass a = w_class("1", 2);              // u11 + u12
    KClass b = v_class("1", 1);              // x11
    REQUIRE(a.rank() == 2);
    REQUIRE((a - a).is_zero());
    REQUIRE((a - b).rank() == 1);

    KClass ratio = kclass_mul(a, b.dual());  // u11/x11 + u12/x11
    REQUIRE(ratio.rank() == 2);
    REQUIRE(ratio.character() == parse_laurent("u[1,1]^1*x[1,1]^-1 + u[1,2]^1*x[1,1]^-1"));

    KClass shifted = b.scaled(Monomial{{VarId::qh(), 2}});
    REQUIRE(shifted.character() == parse_laurent("qh^2*x[1,1]^1"));
}

TEST_CASE("wedge series of a virtual class", "[taut]") {
    VarId zv = VarId::aux("z");
    KClass line = KClass::line(Monomial{{VarId::u("1", 1), 1}});

    REQUIRE(wedge_series(line, zv) == rf("1 - u[1,1]^1*z^-1"));
    REQUIRE(wedge_series(-line, zv) == rf("1", "1 - u[1,1]^1*z^-1"));

    // Doubled line squares the factor.
    KClass two = line + line;
    REQUIRE(wedge_series(two, zv) ==
            rf("1 - u[1,1]^1*z^-1") * rf("1 - u[1,1]^1*z^-1"));

    REQUIRE(wedge_star(KClass{}) == RationalFunction{1L});
}

TEST_CASE("sdet of virtual classes", "[taut]") {
    Monomial l{{VarId::u("1", 1), 1}};
    Monomial m{{VarId::u("1", 2), 1}};

    SdetValue a = sdet(KClass::line(l));
    REQUIRE(a.sign == -1);
    REQUIRE(a.monomial == l);
    REQUIRE(a.to_rational() == rf("-1*u[1,1]^1"));

    SdetValue b = sdet(KClass::line(l) - KClass::line(m));
    REQUIRE(b.sign == 1);
    REQUIRE(b.to_rational() == rf("u[1,1]^1*u[1,2]^-1"));

    SdetValue c = sdet(KClass{});
    REQUIRE(c.sign == 1);
    REQUIRE(c.monomial.empty());

    // Rank is the alternating sum of multiplicities.
    KClass odd = w_class("1", 3) - v_class("1", 2);
    REQUIRE(sdet(odd).sign == -1);
}

TEST_CASE("universal complex at small sectors", "[taut]") {
    Quiver a1 = quiver_a1();
    REQUIRE(universal_complex_class(a1, "1", {}, {{"1", 1}}).character() ==
            parse_laurent("u[1,1]^1"));
    REQUIRE(universal_complex_class(a1, "1", {{"1", 1}}, {{"1", 1}}).character() ==
            parse_laurent("u[1,1]^1 - x[1,1]^1 - qh^2*x[1,1]^1"));

    Quiver jor = quiver_jordan();
    REQUIRE(universal_complex_class(jor, "1", {{"1", 1}}, {{"1", 1}}).character() ==
            parse_laurent("u[1,1]^1 + qh^2*t[loop]^-1*x[1,1]^1 + t[loop]^1*x[1,1]^1"
                          " - x[1,1]^1 - qh^2*x[1,1]^1"));

    Quiver a2 = quiver_a2();
    KClass X = universal_complex_class(a2, "1", {{"1", 1}, {"2", 1}}, {{"1", 1}});
    REQUIRE(X.character() ==
            parse_laurent("u[1,1]^1 + qh^2*t[e]^-1*x[2,1]^1 - x[1,1]^1 - qh^2*x[1,1]^1"));
}

TEST_CASE("cartan series goldens", "[taut]") {
    Quiver a1 = quiver_a1();
    VarId zv = VarId::aux("z");

    // Empty sector: the series is the constant 1.
    REQUIRE(h_series(a1, "1", {}, {}, zv) == RationalFunction{1L});

    // One framing, no tautological directions.
    RationalFunction h01 = h_series(a1, "1", {}, {{"1", 1}}, zv);
    REQUIRE(h01 == rf("qh^1*z^1 - qh^-1*u[1,1]^1", "z^1 - u[1,1]^1"));
    REQUIRE(limit_value(h01, zv, Direction::AT_INFINITY) == rf_qh(1));
    REQUIRE(limit_value(h01, zv, Direction::AT_ZERO) == rf_qh(-1));

    // The leading coefficient at infinity is qh^{w_i - (v, unit)}.
    RationalFunction h11 = h_series(a1, "1", {{"1", 1}}, {{"1", 1}}, zv);
    REQUIRE(limit_value(h11, zv, Direction::AT_INFINITY) == rf_qh(-1));
    RationalFunction h12 = h_series(a1, "1", {{"1", 1}}, {{"1", 2}}, zv);
    REQUIRE(limit_value(h12, zv, Direction::AT_INFINITY) == RationalFunction{1L});

    Quiver jor = quiver_jordan();
    RationalFunction hj = h_series(jor, "1", {{"1", 1}}, {{"1", 1}}, zv);
    REQUIRE(limit_value(hj, zv, Direction::AT_INFINITY) == rf_qh(1));
    REQUIRE(limit_value(hj, zv, Direction::AT_ZERO) == rf_qh(-1));
}

TEST_CASE("projectivization pushforward matches the two-pole expansion", "[taut]") {
    VarId yv = VarId::aux("y");
    KClass U = w_class("1", 2);
    for (long k = -2; k <= 2; ++k) {
        RationalFunction got = projectivization_pushforward(U, yv, k);
        RationalFunction expect =
            uvar(1, static_cast<int>(-k)) / (RationalFunction{1L} - uvar(2) / uvar(1)) +
            uvar(2, static_cast<int>(-k)) / (RationalFunction{1L} - uvar(1) / uvar(2));
        REQUIRE(got == expect);
    }
}

TEST_CASE("vacuum raising element on the framing line", "[taut]") {
    Quiver a1 = quiver_a1();
    std::map<VarId, RationalFunction> at{{chern_root("1", 1), uvar(1)}};
    for (long d = -2; d <= 2; ++d) {
        RationalFunction e = e_vacuum(a1, "1", d, {}, {{"1", 1}});
        REQUIRE(substitute(e, at) == -(rf_qh(1) * uvar(1, static_cast<int>(-d))));
    }

    // Target of (v=1) -> (v=2) carries two Chern roots; the class is symmetric.
    RationalFunction e2 = e_vacuum(a1, "1", 0, {{"1", 1}}, {{"1", 2}});
    std::map<VarId, VarId> swap{{chern_root("1", 1), chern_root("1", 2)},
                                {chern_root("1", 2), chern_root("1", 1)}};
    REQUIRE(detail::relabel(e2, swap) == e2);
}

TEST_CASE("vacuum lowering element goldens", "[taut]") {
    Quiver a1 = quiver_a1();
    for (long k = -2; k <= 2; ++k) {
        RationalFunction f = f_vacuum(a1, "1", k, {{"1", 1}}, {{"1", 1}});
        REQUIRE(f == rf_qh(1) * uvar(1, static_cast<int>(-k)));
    }
    REQUIRE(f_vacuum(a1, "1", 0, {}, {{"1", 1}}).is_zero());
    REQUIRE(f_vacuum(quiver_jordan(), "1", 1, {}, {{"1", 2}}).is_zero());
}

TEST_CASE("iterated vacuum commutator identity", "[taut]") {
    const std::vector<std::pair<long, long>> modes{{0, 0}, {1, -1}, {-1, 2}, {2, 0}};

    Quiver a1 = quiver_a1();
    for (long v = 0; v <= 2; ++v) {
        for (long w = 1; w <= 2; ++w) {
            for (auto [d, k] : modes) {
                EfReport rep = ef_commutator_check(a1, "1", d, k,
                                                   {{"1", v}}, {{"1", w}});
                INFO("a1 v=" << v << " w=" << w << " d=" << d << " k=" << k);
                REQUIRE(rep.pass);
            }
        }
    }

    Quiver jor = quiver_jordan();
    for (long v = 0; v <= 1; ++v) {
        for (auto [d, k] : modes) {
            EfReport rep = ef_commutator_check(jor, "1", d, k, {{"1", v}}, {{"1", 1}});
            INFO("jordan v=" << v << " d=" << d << " k=" << k);
            REQUIRE(rep.pass);
        }
    }

    Quiver a2 = quiver_a2();
    DimVector v11{{"1", 1}, {"2", 1}};
    DimVector w11{{"1", 1}, {"2", 1}};
    for (const std::string i : {"1", "2"}) {
        EfReport rep = ef_commutator_check(a2, i, 1, -1, v11, w11);
        INFO("a2 vertex " << i);
        REQUIRE(rep.pass);
    }

    // A nonvacuous right-hand side: the Jordan loop makes gamma nontrivial.
    EfReport rep = ef_commutator_check(jor, "1", 0, 0, {{"1", 1}}, {{"1", 1}});
    REQUIRE(rep.pass);
    REQUIRE(!rep.rhs.is_zero());
}

TEST_CASE("commutator check rejects large sectors", "[taut]") {
    Quiver a1 = quiver_a1();
    try {
        ef_commutator_check(a1, "1", 0, 0, {{"1", 4}}, {{"1", 1}});
        FAIL("expected a degree limit error");
    } catch (const Error& e) {
        REQUIRE(e.code() == std::string(errc::degree_limit));
    }
}

TEST_CASE("factored extraction matches the series path", "[taut]") {
    VarId z = VarId::aux("z");
    VarId y = VarId::aux("y");
    struct Sector {
        Quiver Q;
        DimVector v, w;
    };
    std::vector<Sector> sectors{
        {quiver_a1(), {{"1", 1}}, {{"1", 1}}},
        {quiver_a1(), {{"1", 2}}, {{"1", 1}}},
        {quiver_jordan(), {{"1", 1}}, {{"1", 1}}},
        {quiver_a2(), {{"1", 1}, {"2", 1}}, {{"1", 1}, {"2", 1}}},
    };
    for (const auto& s : sectors) {
        detail::EfClassData D = detail::ef_class_data(s.Q, "1", s.v, s.w, z, y);
        detail::BinomialForm F = detail::ef_form(D);

        // The factored forms are the functions they claim to be.
        detail::FormSum whole;
        detail::bf_accumulate(whole, F, +1);
        REQUIRE(detail::bf_sum_value(whole) == detail::ef_integrand(s.Q, "1", s.v, s.w, z, y));
        detail::FormSum gsum;
        detail::bf_accumulate(gsum, detail::gamma_form(s.Q, "1"), +1);
        REQUIRE(detail::bf_sum_value(gsum) == gamma_factor(s.Q, "1"));
        detail::FormSum hsum;
        detail::bf_accumulate(hsum, detail::h_form(s.Q, "1", s.v, s.w, z), +1);
        REQUIRE(detail::bf_sum_value(hsum) == h_series(s.Q, "1", s.v, s.w, z));

        RationalFunction g = detail::ef_integrand(s.Q, "1", s.v, s.w, z, y);
        for (long k : {-2L, 0L, 1L}) {
            for (long d : {-1L, 0L, 2L}) {
                detail::FormSum acc;
                for (const auto& Gy : detail::bf_delta_forms(F, y, k))
                    for (const auto& G : detail::bf_delta_forms(Gy, z, d))
                        detail::bf_accumulate(acc, G, +1);
                RationalFunction fast = detail::bf_sum_value(acc);
                RationalFunction slow =
                    delta_coefficient(delta_coefficient(g, y, k), z, d);
                INFO("v=" << dv_str(s.Q, s.v) << " w=" << dv_str(s.Q, s.w)
                          << " d=" << d << " k=" << k);
                REQUIRE(fast == slow);
            }
        }
    }
}

TEST_CASE("no residue at the shifted pole", "[taut]") {
    REQUIRE(ef_residue_check(quiver_a1(), "1", {{"1", 1}}, {{"1", 1}}));
    REQUIRE(ef_residue_check(quiver_a1(), "1", {{"1", 2}}, {{"1", 2}}));
    REQUIRE(ef_residue_check(quiver_jordan(), "1", {{"1", 1}}, {{"1", 1}}));
    DimVector v11{{"1", 1}, {"2", 1}};
    REQUIRE(ef_residue_check(quiver_a2(), "1", v11, v11));
}
