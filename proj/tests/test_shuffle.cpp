#include "catch_amalgamated.hpp"

#include <random>

#include "kha/parse.hpp"
#include "kha/shuffle.hpp"

using namespace kha;

namespace {

RationalFunction rf(const std::string& s) { return parse_rational(s); }

ShuffleElement gen(const Quiver& Q, const std::string& i, int d) {
    return shuffle_generator(Q, i, d);
}

// random symmetric polynomial element of the given degree
ShuffleElement random_element(const Quiver& Q, const DimVector& n, std::mt19937& rng) {
    std::uniform_int_distribution<int> expo(-2, 2), coef(-3, 3), nterms(1, 3);
    LaurentPoly p;
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        for (const auto& [i, k] : n)
            for (long a = 1; a <= k; ++a) {
                int e = expo(rng);
                if (e != 0) m[VarId::z(i, static_cast<int>(a))] = e;
            }
        int c = coef(rng);
        if (c == 0) c = 1;
        p.add_term(m, Rat(c));
    }
    return symmetrize(Q, RationalFunction(p), n);
}

} // namespace

TEST_CASE("unit and generators") {
    Quiver a1 = quiver_a1();
    REQUIRE(shuffle_unit().degree.empty());
    REQUIRE(shuffle_unit().value == RationalFunction(1L));
    REQUIRE(gen(a1, "1", -2).value == rf("z[1,1]^-2"));
    REQUIRE(dv_get(gen(a1, "1", 3).degree, "1") == 1);
    REQUIRE(gen(a1, "1", 0).is_polynomial());
}

TEST_CASE("symmetrize") {
    Quiver a1 = quiver_a1();
    DimVector two{{"1", 2}};
    REQUIRE(symmetrize(a1, rf("z[1,1]^1"), two).value == rf("z[1,1]^1 + z[1,2]^1"));
    // already-symmetric input picks up the full orbit count
    REQUIRE(symmetrize(a1, rf("z[1,1]^1*z[1,2]^1"), two).value ==
            rf("2*z[1,1]^1*z[1,2]^1"));
    // rational inputs are allowed
    REQUIRE(symmetrize(a1, rf("z[1,1]^1/z[1,2]^1"), two).value ==
            rf("z[1,1]^1/z[1,2]^1 + z[1,2]^1/z[1,1]^1"));
    ShuffleElement s = symmetrize(a1, rf("z[1,1]^2"), two);
    REQUIRE(is_symmetric(a1, s));
}

TEST_CASE("A1 generator square is qh + qh^-1") {
    Quiver a1 = quiver_a1();
    ShuffleElement prod = shuffle_mul(a1, gen(a1, "1", 0), gen(a1, "1", 0));
    REQUIRE(dv_get(prod.degree, "1") == 2);
    REQUIRE(prod.value == rf("qh^1 + qh^-1"));
    REQUIRE(prod.value.str() == "qh^1 + qh^-1");

    ShuffleElement word = word_to_shuffle(a1, {{"1", 0}, {"1", 0}});
    REQUIRE(shuffle_eq(word, prod));
}

TEST_CASE("unit is neutral and grading adds") {
    Quiver a2 = quiver_a2();
    ShuffleElement g = gen(a2, "1", 2);
    REQUIRE(shuffle_eq(shuffle_mul(a2, g, shuffle_unit()), g));
    REQUIRE(shuffle_eq(shuffle_mul(a2, shuffle_unit(), g), g));

    ShuffleElement p = shuffle_mul(a2, gen(a2, "1", 1), gen(a2, "2", -1));
    REQUIRE(p.degree == DimVector{{"1", 1}, {"2", 1}});
}

TEST_CASE("cross-vertex products on A2 carry one-sided kernels") {
    Quiver a2 = quiver_a2();
    ShuffleElement p12 = shuffle_mul(a2, gen(a2, "1", 0), gen(a2, "2", 0));
    REQUIRE(p12.value == rf("1 - qh^2*z[2,1]^1/(t[e]^1*z[1,1]^1)"));
    ShuffleElement p21 = shuffle_mul(a2, gen(a2, "2", 0), gen(a2, "1", 0));
    REQUIRE(p21.value == rf("qh^1*(1 - z[2,1]^1/(t[e]^1*z[1,1]^1))"));
}

TEST_CASE("Jordan generator square") {
    Quiver j = quiver_jordan();
    ShuffleElement p = shuffle_mul(j, gen(j, "1", 0), gen(j, "1", 0));
    REQUIRE(is_symmetric(j, p));
    REQUIRE(p.is_polynomial());
    // frozen via the kernel symmetrization by hand:
    // Sym[(z2 - q z1)(1 - z1/(t z2))(1 - q z2/(t z1))/(z2 - z1)]
    RationalFunction z1 = rf("z[1,1]^1"), z2 = rf("z[1,2]^1");
    RationalFunction t = rf("t[loop]^1"), q = rf("qh^2");
    RationalFunction k12 = (z2 - q * z1) * (RationalFunction(1L) - z1 / (t * z2)) *
                           (RationalFunction(1L) - q * z2 / (t * z1)) / (z2 - z1);
    RationalFunction k21 = (z1 - q * z2) * (RationalFunction(1L) - z2 / (t * z1)) *
                           (RationalFunction(1L) - q * z1 / (t * z2)) / (z1 - z2);
    REQUIRE(p.value == k12 + k21);
}

TEST_CASE("word images match iterated products") {
    std::vector<std::vector<std::pair<std::string, int>>> words_a1 = {
        {{"1", 1}},
        {{"1", 1}, {"1", -1}},
        {{"1", 0}, {"1", 1}, {"1", 2}},
        {{"1", -2}, {"1", 0}, {"1", 2}},
    };
    std::vector<std::vector<std::pair<std::string, int>>> words_a2 = {
        {{"1", 0}, {"2", 0}},
        {{"2", 1}, {"1", -1}, {"2", 0}},
        {{"1", 1}, {"2", -2}, {"1", 0}},
    };
    std::vector<std::vector<std::pair<std::string, int>>> words_j = {
        {{"1", 0}, {"1", 1}},
        {{"1", 0}, {"1", 0}, {"1", 1}},
    };
    auto check = [](const Quiver& Q, const auto& words) {
        for (const auto& w : words) {
            ShuffleElement it = shuffle_unit();
            for (const auto& [i, d] : w) it = shuffle_mul(Q, it, shuffle_generator(Q, i, d));
            ShuffleElement img = word_to_shuffle(Q, w);
            REQUIRE(img.degree == it.degree);
            REQUIRE(img.value == it.value);
            REQUIRE(is_symmetric(Q, img));
        }
    };
    check(quiver_a1(), words_a1);
    check(quiver_a2(), words_a2);
    check(quiver_jordan(), words_j);
}

TEST_CASE("associativity on random elements") {
    std::mt19937 rng(424242);
    Quiver a1 = quiver_a1();
    for (int iter = 0; iter < 6; ++iter) {
        ShuffleElement A = random_element(a1, {{"1", 1}}, rng);
        ShuffleElement B = random_element(a1, {{"1", 1}}, rng);
        ShuffleElement C = random_element(a1, {{"1", 1}}, rng);
        ShuffleElement left = shuffle_mul(a1, shuffle_mul(a1, A, B), C);
        ShuffleElement right = shuffle_mul(a1, A, shuffle_mul(a1, B, C));
        REQUIRE(left.value == right.value);
    }
    Quiver a2 = quiver_a2();
    for (int iter = 0; iter < 4; ++iter) {
        ShuffleElement A = random_element(a2, {{"1", 1}}, rng);
        ShuffleElement B = random_element(a2, {{"2", 1}}, rng);
        ShuffleElement C = random_element(a2, {{"1", 1}, {"2", 1}}, rng);
        ShuffleElement left = shuffle_mul(a2, shuffle_mul(a2, A, B), C);
        ShuffleElement right = shuffle_mul(a2, A, shuffle_mul(a2, B, C));
        REQUIRE(left.value == right.value);
    }
}

TEST_CASE("degree limit") {
    Quiver a1 = quiver_a1();
    ShuffleElement big{{{"1", 6}}, RationalFunction{1L}};
    REQUIRE_THROWS_AS(shuffle_mul(a1, big, gen(a1, "1", 0)), Error);
    try {
        shuffle_mul(a1, big, gen(a1, "1", 0));
    } catch (const Error& e) {
        REQUIRE(e.code() == std::string(errc::degree_limit));
    }
}

TEST_CASE("wheel conditions") {
    Quiver j = quiver_jordan();

    // degree (1): no admissible triple
    WheelReport r1 = wheel_check(j, gen(j, "1", 5));
    REQUIRE(r1.pass);
    REQUIRE(r1.vacuous);

    // genuine members: images of words
    ShuffleElement w3 = word_to_shuffle(j, {{"1", 0}, {"1", 0}, {"1", 0}});
    WheelReport r3 = wheel_check(j, w3);
    REQUIRE(!r3.vacuous);
    REQUIRE(r3.checked > 0);
    REQUIRE(r3.pass);

    ShuffleElement w2 = word_to_shuffle(j, {{"1", 1}, {"1", 0}});
    REQUIRE(wheel_check(j, w2).vacuous); // needs three slots at the loop vertex

    // the symmetric constant 1 in degree (3) is not in the image
    ShuffleElement bad{{{"1", 3}}, RationalFunction(1L)};
    WheelReport rb = wheel_check(j, bad);
    REQUIRE(!rb.pass);
    REQUIRE(!rb.first_violation.empty());

    Quiver a2 = quiver_a2();
    ShuffleElement wa2 = word_to_shuffle(a2, {{"1", 0}, {"1", 1}, {"2", 0}});
    WheelReport ra2 = wheel_check(a2, wa2);
    REQUIRE(!ra2.vacuous);
    REQUIRE(ra2.pass);

    // an A2 element violating the wheel: unsymmetrized junk degree (2,1)
    ShuffleElement junk{{{"1", 2}, {"2", 1}}, rf("z[1,1]^1")};
    REQUIRE(!wheel_check(a2, junk).pass);
}
