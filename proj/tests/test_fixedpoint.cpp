#include <catch2/catch_amalgamated.hpp>

#include "kha/fixedpoint.hpp"
#include "kha/parse.hpp"
#include "kha/quiver.hpp"
#include "kha/shuffle.hpp"
#include "kha/taut.hpp"

using namespace kha;

namespace {

RationalFunction uvar(const std::string& vertex, long b, int e = 1) {
    return RationalFunction::var(VarId::u(vertex, b), e);
}

FixedPointLabel label(DimVector w, std::map<std::string, std::set<long>> s) {
    return FixedPointLabel(std::move(w), std::move(s));
}

const RationalFunction kOne(1L);

}  // namespace

TEST_CASE("fixed point labels normalize and derive dimensions", "[fixedpoint]") {
    FixedPointLabel a = label({{"1", 2}}, {{"1", {1, 2}}});
    REQUIRE(a.v() == DimVector{{"1", 2}});
    REQUIRE(a.str() == "I{1:[1,2]}");

    FixedPointLabel vac = label({{"1", 2}}, {});
    REQUIRE(vac.v().empty());
    REQUIRE(vac.str() == "I{}");

    // pruned empty subsets compare equal to never-mentioned ones
    FixedPointLabel pruned = label({{"1", 2}, {"2", 0}}, {{"2", {}}});
    REQUIRE(pruned == label({{"1", 2}}, {}));

    REQUIRE(a.without("1", 2) == label({{"1", 2}}, {{"1", {1}}}));
    REQUIRE(vac.with("1", 1) == label({{"1", 2}}, {{"1", {1}}}));

    REQUIRE_THROWS_AS(label({{"1", 1}}, {{"1", {2}}}), Error);
}

TEST_CASE("basis enumeration is complete and deterministic", "[fixedpoint]") {
    Quiver a1 = quiver_a1();
    DimVector w{{"1", 2}};

    auto one = enumerate_basis(a1, {{"1", 1}}, w);
    REQUIRE(one.size() == 2);
    REQUIRE(one[0] == label(w, {{"1", {1}}}));
    REQUIRE(one[1] == label(w, {{"1", {2}}}));

    REQUIRE(enumerate_basis(a1, {}, w).size() == 1);
    REQUIRE(enumerate_basis(a1, {{"1", 2}}, {{"1", 1}}).empty());

    Quiver a2 = quiver_a2();
    DimVector w2{{"1", 2}, {"2", 2}};
    auto grid = enumerate_basis(a2, {{"1", 1}, {"2", 1}}, w2);
    REQUIRE(grid.size() == 4);
    // vertex 1 most significant, subsets lexicographic
    REQUIRE(grid[0] == label(w2, {{"1", {1}}, {"2", {1}}}));
    REQUIRE(grid[1] == label(w2, {{"1", {1}}, {"2", {2}}}));
    REQUIRE(grid[2] == label(w2, {{"1", {2}}, {"2", {1}}}));
    REQUIRE(grid[3] == label(w2, {{"1", {2}}, {"2", {2}}}));

    auto full = enumerate_basis(a2, {{"1", 1}, {"2", 2}}, w2);
    REQUIRE(full.size() == 2);
}

TEST_CASE("tautological restriction at a fixed point", "[fixedpoint]") {
    Quiver a1 = quiver_a1();
    FixedPointLabel s = label({{"1", 3}}, {{"1", {2}}});
    TautRestriction r = restrict_taut(a1, s);
    REQUIRE(r.V["1"].character() == parse_laurent("u[1,2]^1"));
    REQUIRE(r.W["1"].character() == parse_laurent("u[1,1]^1 + u[1,2]^1 + u[1,3]^1"));

    FixedPointLabel vac = label({{"1", 3}}, {});
    REQUIRE(restrict_taut(a1, vac).V["1"].is_zero());

    FixedPointLabel fullsub = label({{"1", 2}}, {{"1", {1, 2}}});
    TautRestriction rf2 = restrict_taut(a1, fullsub);
    REQUIRE(rf2.V["1"] == rf2.W["1"]);
}

TEST_CASE("tangent characters at fixed points", "[fixedpoint]") {
    Quiver a1 = quiver_a1();

    // zero-dimensional sector: everything cancels
    REQUIRE(tangent_character(a1, label({{"1", 1}}, {{"1", {1}}})).is_zero());
    REQUIRE(tangent_character(a1, label({{"1", 2}}, {})).is_zero());

    // cotangent bundle of the projective line
    KClass tan = tangent_character(a1, label({{"1", 2}}, {{"1", {1}}}));
    REQUIRE(tan.rank() == 2);
    REQUIRE(tan.character() ==
            parse_laurent("qh^-2*u[1,2]^1*u[1,1]^-1 + u[1,1]^1*u[1,2]^-1"));

    // one loop: two-dimensional tangent space with weights 1/t and t/q
    Quiver jordan = quiver_jordan();
    KClass jt = tangent_character(jordan, label({{"1", 1}}, {{"1", {1}}}));
    REQUIRE(jt.character() == parse_laurent("qh^-2*t[loop]^1 + t[loop]^-1"));
}

TEST_CASE("lowering action on the fixed basis", "[fixedpoint]") {
    Quiver a1 = quiver_a1();
    DimVector w1{{"1", 1}};

    ModuleVector top = basis_vector(label(w1, {{"1", {1}}}));
    ModuleVector low = act_f(a1, "1", 0, top);
    REQUIRE(low == basis_vector(label(w1, {})));

    // mode weight is a plain power of the removed framing weight
    for (long d : {-2L, 1L, 3L})
        REQUIRE(act_f(a1, "1", d, top) ==
                basis_vector(label(w1, {})).scaled(uvar("1", 1, static_cast<int>(d))));

    // nothing to remove in the vacuum
    REQUIRE(act_f(a1, "1", 0, basis_vector(label(w1, {}))).is_zero());

    DimVector w2{{"1", 2}};
    ModuleVector both = act_f(a1, "1", 0, basis_vector(label(w2, {{"1", {1, 2}}})));
    REQUIRE(both.coeffs.size() == 2);
    RationalFunction c1 = both.coeffs.at(label(w2, {{"1", {2}}}));
    RationalFunction c2 = both.coeffs.at(label(w2, {{"1", {1}}}));
    REQUIRE(c1 == kOne / (rf_qh() * (kOne - uvar("1", 2) / uvar("1", 1))));
    REQUIRE(c2 == kOne / (rf_qh() * (kOne - uvar("1", 1) / uvar("1", 2))));

    // grading: one step down per application
    ModuleVector twice = act_word_f(a1, {{"1", 0}, {"1", 0}},
                                    basis_vector(label(w2, {{"1", {1, 2}}})));
    for (const auto& [l, c] : twice.coeffs) REQUIRE(l.v().empty());
}

TEST_CASE("diagonal actions match their closed forms", "[fixedpoint]") {
    Quiver a1 = quiver_a1();
    DimVector w1{{"1", 1}};
    FixedPointLabel s = label(w1, {{"1", {1}}});
    ModuleVector x = basis_vector(s);

    REQUIRE(act_a(a1, "1", 1, x) ==
            x.scaled(uvar("1", 1) * (kOne - rf_qh(-2))));
    REQUIRE(act_a(a1, "1", 0, x).is_zero());
    REQUIRE(act_a(a1, "1", 1, basis_vector(label(w1, {}))).is_zero());

    REQUIRE(act_b(a1, "1", -1, x) ==
            x.scaled(uvar("1", 1, -1) * (kOne - rf_qh(2))));

    REQUIRE(act_qv(a1, "1", +1, x) == x.scaled(rf_qh(1)));
    REQUIRE(act_qv(a1, "1", -1, basis_vector(label(w1, {}))) ==
            basis_vector(label(w1, {})));
    REQUIRE(act_qw(a1, "1", -1, x) == x.scaled(rf_qh(-1)));
}

TEST_CASE("cartan eigenvalue modes", "[fixedpoint]") {
    Quiver a1 = quiver_a1();
    Quiver jordan = quiver_jordan();

    // leading mode is the grading power qh^{w_i - (v, s^i)}
    struct Case {
        const Quiver& Q;
        FixedPointLabel s;
        int pref;
    };
    std::vector<Case> cases{
        {a1, label({{"1", 1}}, {}), 1},
        {a1, label({{"1", 1}}, {{"1", {1}}}), -1},
        {a1, label({{"1", 2}}, {{"1", {1}}}), 0},
        {jordan, label({{"1", 1}}, {{"1", {1}}}), 1},
    };
    for (const auto& c : cases) {
        REQUIRE(h_mode_eigenvalue(c.Q, c.s, "1", Direction::AT_INFINITY, 0) ==
                rf_qh(c.pref));
    }

    // subleading modes of the rank-one vacuum series
    FixedPointLabel vac = label({{"1", 1}}, {});
    REQUIRE(h_mode_eigenvalue(a1, vac, "1", Direction::AT_INFINITY, 1) ==
            uvar("1", 1) * (rf_qh(1) - rf_qh(-1)));
    REQUIRE(h_mode_eigenvalue(a1, vac, "1", Direction::AT_ZERO, 1) ==
            (rf_qh(-1) - rf_qh(1)) / uvar("1", 1));

    ModuleVector v = basis_vector(vac);
    REQUIRE(act_h_mode(a1, "1", Direction::AT_INFINITY, 0, v) == v.scaled(rf_qh(1)));
}

TEST_CASE("modified pairing is diagonal with unit normalization at points",
          "[fixedpoint]") {
    Quiver a1 = quiver_a1();

    REQUIRE(gram_diagonal(a1, label({{"1", 1}}, {})) == kOne);
    REQUIRE(gram_diagonal(a1, label({{"1", 1}}, {{"1", {1}}})) == kOne);

    // frozen from the tangent and sdet data of the projective line
    RationalFunction g1 = gram_diagonal(a1, label({{"1", 2}}, {{"1", {1}}}));
    RationalFunction expect =
        -rf_qh(1) * uvar("1", 1) / uvar("1", 2) *
        (kOne - uvar("1", 2) / uvar("1", 1)) *
        (kOne - rf_qh(2) * uvar("1", 1) / uvar("1", 2));
    REQUIRE(g1 == expect);

    // one loop contributes its own wedge and a t-shifted determinant line
    Quiver jordan = quiver_jordan();
    RationalFunction t = RationalFunction::var(VarId::t("loop"));
    RationalFunction gj = gram_diagonal(jordan, label({{"1", 1}}, {{"1", {1}}}));
    REQUIRE(gj == -(rf_qh(1) / t) * (kOne - t) * (kOne - rf_qh(2) / t));

    // bilinearity and orthogonality
    DimVector w2{{"1", 2}};
    ModuleVector xa = basis_vector(label(w2, {{"1", {1}}}));
    ModuleVector xb = basis_vector(label(w2, {{"1", {2}}}));
    REQUIRE(pairing_modified(a1, xa, xb).is_zero());
    ModuleVector mix = xa + xb.scaled(uvar("1", 1));
    REQUIRE(pairing_modified(a1, mix, xb) ==
            uvar("1", 1) * gram_diagonal(a1, label(w2, {{"1", {2}}})));

    // every diagonal entry on small sectors is nonzero
    Quiver a2 = quiver_a2();
    for (const auto& s : enumerate_basis(a2, {{"1", 1}, {"2", 1}}, {{"1", 2}, {"2", 1}}))
        REQUIRE(!gram_diagonal(a2, s).is_zero());
}

TEST_CASE("raising action and the basic commutator", "[fixedpoint]") {
    Quiver a1 = quiver_a1();
    DimVector w1{{"1", 1}};
    ModuleVector vac = basis_vector(label(w1, {}));

    REQUIRE(act_e(a1, "1", 0, vac) == basis_vector(label(w1, {{"1", {1}}})));

    // raising lands one step up in the grading
    for (const auto& [l, c] : act_e(a1, "1", 2, vac).coeffs)
        REQUIRE(l.v() == DimVector{{"1", 1}});

    ModuleVector comm = act_e(a1, "1", 0, act_f(a1, "1", 0, vac)) -
                        act_f(a1, "1", 0, act_e(a1, "1", 0, vac));
    REQUIRE(comm == vac.scaled(RationalFunction(-1L)));
}

TEST_CASE("word action agrees with the shuffle action", "[fixedpoint]") {
    using Word = std::vector<std::pair<std::string, int>>;
    struct Case {
        Quiver Q;
        DimVector w;
        FixedPointLabel start;
        std::vector<Word> words;
    };

    std::vector<Case> cases;
    {
        Quiver a1 = quiver_a1();
        DimVector w{{"1", 2}};
        cases.push_back({a1,
                         w,
                         label(w, {{"1", {1, 2}}}),
                         {{{"1", 0}},
                          {{"1", 1}, {"1", -1}},
                          {{"1", 0}, {"1", 2}},
                          {{"1", 1}, {"1", 0}, {"1", -1}}}});
    }
    {
        Quiver jordan = quiver_jordan();
        DimVector w{{"1", 2}};
        cases.push_back({jordan,
                         w,
                         label(w, {{"1", {1, 2}}}),
                         {{{"1", 0}},
                          {{"1", -1}, {"1", 2}},
                          {{"1", 1}, {"1", 1}}}});
    }
    {
        Quiver a2 = quiver_a2();
        DimVector w{{"1", 2}, {"2", 1}};
        cases.push_back({a2,
                         w,
                         label(w, {{"1", {1, 2}}, {"2", {1}}}),
                         {{{"1", 0}, {"2", 1}},
                          {{"2", 1}, {"1", 0}},
                          {{"1", 1}, {"2", 0}, {"1", -1}},
                          {{"2", -1}, {"1", 2}, {"1", 0}}}});
    }

    for (const auto& c : cases) {
        ModuleVector x = basis_vector(c.start);
        for (const Word& word : c.words) {
            ModuleVector direct = act_word_f(c.Q, word, x);
            ModuleVector via = act_shuffle(c.Q, word_to_shuffle(c.Q, word), x);
            INFO("word length " << word.size());
            REQUIRE(direct == via);
        }
    }

    // the unit element acts as the identity
    Quiver a1 = quiver_a1();
    ShuffleElement unit{{}, kOne};
    ModuleVector x = basis_vector(label({{"1", 2}}, {{"1", {1}}}));
    REQUIRE(act_shuffle(a1, unit, x) == x);
}

TEST_CASE("raising is the pairing adjoint of lowering", "[fixedpoint]") {
    struct Case {
        Quiver Q;
        DimVector w;
    };
    std::vector<Case> cases{{quiver_a1(), {{"1", 2}}},
                            {quiver_jordan(), {{"1", 1}}},
                            {quiver_a2(), {{"1", 1}, {"2", 1}}}};

    for (const auto& c : cases) {
        const std::string i = "1";
        for (long d : {-1L, 0L, 2L}) {
            // x runs over the v-sector, y over the (v - s^i)-sector
            for (const DimVector& v :
                 std::vector<DimVector>{dv_unit(i), dv_add(dv_unit(i), dv_unit(i))}) {
                auto upper = enumerate_basis(c.Q, v, c.w);
                auto lower = enumerate_basis(c.Q, dv_add(v, dv_unit(i), -1), c.w);
                if (upper.empty() || lower.empty()) continue;
                ModuleVector x(c.w);
                RationalFunction spice = kOne;
                for (const auto& s : upper) {
                    x.add(s, spice);
                    spice *= uvar(i, 1) + rf_qh(1);
                }
                ModuleVector y(c.w);
                for (const auto& s : lower) y.add(s, kOne + uvar(i, 1, -1));
                RationalFunction left = pairing_modified(c.Q, act_f(c.Q, i, d, x), y);
                RationalFunction right = pairing_modified(c.Q, x, act_e(c.Q, i, d, y));
                REQUIRE(left == right);
            }
        }
    }
}

TEST_CASE("vacuum matrix elements match the localized action", "[fixedpoint]") {
    struct Case {
        Quiver Q;
        DimVector w;
        std::string i;
    };
    std::vector<Case> cases{{quiver_a1(), {{"1", 1}}, "1"},
                            {quiver_a1(), {{"1", 2}}, "1"},
                            {quiver_a2(), {{"1", 1}, {"2", 1}}, "1"},
                            {quiver_a2(), {{"1", 1}, {"2", 2}}, "2"},
                            {quiver_jordan(), {{"1", 1}}, "1"}};

    for (const auto& c : cases) {
        long loops = static_cast<long>(c.Q.loops_at(c.i).size());
        RationalFunction kappa = rf_qh(static_cast<int>(loops - 1));
        FixedPointLabel vac = label(c.w, {});
        DimVector unit = dv_unit(c.i);

        for (long d = -2; d <= 2; ++d) {
            // raising side: coefficients of the step-one classes, renormalized
            // by the tangent wedge, against the symmetric-function formula
            ModuleVector up = act_e(c.Q, c.i, d, basis_vector(vac));
            RationalFunction evac = e_vacuum(c.Q, c.i, -d, {}, c.w);
            for (long a = 1; a <= dv_get(c.w, c.i); ++a) {
                FixedPointLabel s = vac.with(c.i, a);
                RationalFunction lhs =
                    up.coeffs.at(s) * wedge_star(tangent_character(c.Q, s).dual());
                RationalFunction rhs =
                    -kappa * substitute(evac, {{chern_root(c.i, 1), uvar(c.i, a)}});
                REQUIRE(lhs == rhs);
            }

            // lowering side: expansion of the unit class fed through one step
            ModuleVector spread(c.w);
            for (long a = 1; a <= dv_get(c.w, c.i); ++a) {
                FixedPointLabel s = vac.with(c.i, a);
                spread.add(s, kOne / wedge_star(tangent_character(c.Q, s).dual()));
            }
            ModuleVector down = act_f(c.Q, c.i, d, spread);
            RationalFunction lhs = down.coeffs.count(vac) ? down.coeffs.at(vac)
                                                          : RationalFunction{};
            RationalFunction rhs = kappa * f_vacuum(c.Q, c.i, -d, unit, c.w);
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("relation suite passes on rank-one framings", "[fixedpoint]") {
    Quiver a1 = quiver_a1();
    RelationSuiteReport rep = relation_suite(a1, {{"1", 1}}, 1, -2, 2);
    REQUIRE(rep.pass);
    REQUIRE(rep.failures.empty());
    REQUIRE(rep.per_relation.at("rel5") == 50);  // 2 labels x 5x5 modes
    REQUIRE(rep.checked > 200);
}

TEST_CASE("relation suite passes on a rank-two framing", "[fixedpoint]") {
    Quiver a1 = quiver_a1();
    RelationSuiteReport rep = relation_suite(a1, {{"1", 2}}, 2, -1, 1);
    REQUIRE(rep.pass);
    REQUIRE(rep.failures.empty());
    REQUIRE(rep.per_relation.at("rel5") == 4 * 9);
}

TEST_CASE("relation suite gates the raising composition on loops and edges",
          "[fixedpoint]") {
    Quiver jordan = quiver_jordan();
    RelationSuiteReport rj = relation_suite(jordan, {{"1", 1}}, 1, -1, 1);
    REQUIRE(rj.pass);
    REQUIRE(rj.per_relation.at("rel5") == 9);  // vacuum label only

    Quiver a2 = quiver_a2();
    RelationSuiteReport ra = relation_suite(a2, {{"1", 1}, {"2", 1}}, 1, -1, 1);
    REQUIRE(ra.pass);
    REQUIRE(ra.per_relation.at("rel5") == 4 * 9);  // 2x2 vertex pairs on the vacuum

    REQUIRE_THROWS_AS(relation_suite(jordan, {{"1", 1}}, 1, 0, 0, true), Error);
    try {
        relation_suite(a2, {{"1", 1}, {"2", 1}}, 1, 0, 0, true);
        FAIL("expected an error");
    } catch (const Error& e) {
        REQUIRE(std::string(e.code()) == errc::non_grassmannian);
    }

    // the flag is redundant but legal when there are no edges
    REQUIRE(relation_suite(quiver_a1(), {{"1", 1}}, 1, 0, 0, true).pass);
}
