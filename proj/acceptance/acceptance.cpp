// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
//
// Every check is an exact symbolic identity (cross-multiplication equality);
// randomized checks use fixed seeds so the run is reproducible bit-for-bit.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kha/error.hpp"
#include "kha/fixedpoint.hpp"
#include "kha/parse.hpp"
#include "kha/quiver.hpp"
#include "kha/rmatrix.hpp"
#include "kha/series.hpp"
#include "kha/shuffle.hpp"
#include "kha/taut.hpp"

using namespace kha;

namespace {

int g_failures = 0;

int g_only = 0;  // 0 = run everything; otherwise run a single criterion

void report(int n, const std::string& name, bool ok, double secs,
            const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << n << ": " << name << "  ("
              << secs << "s)";
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++g_failures;
}

template <typename Fn>
void criterion(int n, const std::string& name, Fn fn) {
    if (g_only != 0 && g_only != n) return;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = fn(detail);
    } catch (const Error& e) {
        detail = std::string("error [") + e.code() + "]: " + e.what();
    } catch (const std::exception& e) {
        detail = std::string("error: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(n, name, ok, secs, detail);
}

// All dimension vectors with entries in 0..cap over the quiver's vertices.
std::vector<DimVector> grid(const Quiver& Q, long cap) {
    std::vector<DimVector> out{DimVector{}};
    for (const std::string& i : Q.vertices()) {
        std::vector<DimVector> next;
        for (const DimVector& v : out)
            for (long n = 0; n <= cap; ++n) {
                DimVector v2 = v;
                if (n > 0) v2[i] = n;
                next.push_back(std::move(v2));
            }
        out = std::move(next);
    }
    return out;
}

// Every fixed-point label of the framing w, across all sectors.
std::vector<FixedPointLabel> all_labels(const Quiver& Q, const DimVector& w) {
    std::vector<FixedPointLabel> out;
    long cap = 0;
    for (const std::string& i : Q.vertices()) cap = std::max(cap, dv_get(w, i));
    for (const DimVector& v : grid(Q, cap)) {
        bool fits = true;
        for (const std::string& i : Q.vertices())
            fits = fits && dv_get(v, i) <= dv_get(w, i);
        if (!fits) continue;
        for (const FixedPointLabel& S : enumerate_basis(Q, v, w)) out.push_back(S);
    }
    return out;
}

// ---- criterion 1: full relation suite on the one-vertex edge-free quiver ----

bool crit1(std::string& detail) {
    Quiver Q = quiver_a1();
    long total = 0;
    for (long wn : {1L, 2L}) {
        RelationSuiteReport rep =
            relation_suite(Q, DimVector{{"1", wn}}, wn, -2, 2, /*rel5_full=*/true);
        total += rep.checked;
        if (!rep.pass) {
            detail = "w=(" + std::to_string(wn) + "): " + rep.failures.front();
            return false;
        }
    }
    detail = std::to_string(total) + " identities";
    return true;
}

// ---- criterion 2: vacuum commutator via the eigenvalue-series bracket ----

bool crit2(std::string& detail) {
    VarId z = VarId::aux("z");
    long checked = 0;
    for (const Quiver& Q : {quiver_jordan(), quiver_a2()}) {
        for (const DimVector& w : grid(Q, 2)) {
            FixedPointLabel vac(w, {});
            ModuleVector x = basis_vector(vac);
            for (const std::string& i : Q.vertices())
                for (const std::string& j : Q.vertices())
                    for (long d = -2; d <= 2; ++d)
                        for (long k = -2; k <= 2; ++k) {
                            ModuleVector lhs = act_e(Q, i, d, act_f(Q, j, k, x)) -
                                               act_f(Q, j, k, act_e(Q, i, d, x));
                            ModuleVector rhs(w);
                            if (i == j)
                                rhs = x.scaled(-gamma_factor(Q, i) *
                                               delta_coefficient(h_eigenvalue(Q, vac, i, z),
                                                                 z, static_cast<int>(-(d + k))));
                            if (!(lhs == rhs)) {
                                detail = "vacuum w=" + dv_str(Q, w) + " i=" + i + " j=" + j +
                                         " d=" + std::to_string(d) + " k=" + std::to_string(k);
                                return false;
                            }
                            ++checked;
                        }
        }
    }
    // Hand-derived golden: [e_{1,0}, f_{1,0}] I_vac = -I_vac for w=(1), no edges.
    Quiver A1 = quiver_a1();
    ModuleVector x = basis_vector(FixedPointLabel(DimVector{{"1", 1}}, {}));
    ModuleVector comm =
        act_e(A1, "1", 0, act_f(A1, "1", 0, x)) - act_f(A1, "1", 0, act_e(A1, "1", 0, x));
    if (!(comm == x.scaled(RationalFunction{-1L}))) {
        detail = "one-vertex golden [e0,f0] vac != -vac";
        return false;
    }
    detail = std::to_string(checked) + " brackets + golden";
    return true;
}

// ---- criterion 3: commutator identity in free Chern-root symbols ----

bool crit3(std::string& detail) {
    long checked = 0;
    for (const Quiver& Q : {quiver_a1(), quiver_jordan(), quiver_a2()}) {
        for (const DimVector& v : grid(Q, 2))
            for (const DimVector& w : grid(Q, 2))
                for (const std::string& i : Q.vertices())
                    for (long d = -2; d <= 2; ++d)
                        for (long k = -2; k <= 2; ++k) {
                            EfReport r = ef_commutator_check(Q, i, d, k, v, w);
                            if (!r.pass) {
                                detail = "v=" + dv_str(Q, v) + " w=" + dv_str(Q, w) + " i=" +
                                         i + " d=" + std::to_string(d) + " k=" +
                                         std::to_string(k);
                                return false;
                            }
                            ++checked;
                        }
    }
    detail = std::to_string(checked) + " identities";
    return true;
}

// ---- criterion 4: shuffle kernel golden, associativity, grading ----

bool crit4(std::string& detail) {
    Quiver Q = quiver_a1();
    ShuffleElement gen = shuffle_generator(Q, "1", 0);
    ShuffleElement prod = shuffle_mul(Q, gen, gen);
    if (prod.value.str() != "qh^1 + qh^-1") {
        detail = "kernel golden got '" + prod.value.str() + "'";
        return false;
    }

    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> len_dist(0, 2), exp_dist(-2, 2);
    auto random_elt = [&]() {
        std::vector<std::pair<std::string, int>> word;
        int len = len_dist(rng);
        for (int k = 0; k < len; ++k) word.emplace_back("1", exp_dist(rng));
        return word_to_shuffle(Q, word);
    };
    for (int trial = 0; trial < 50; ++trial) {
        ShuffleElement A = random_elt(), B = random_elt(), C = random_elt();
        ShuffleElement AB = shuffle_mul(Q, A, B);
        ShuffleElement BC = shuffle_mul(Q, B, C);
        if (!shuffle_eq(shuffle_mul(Q, AB, C), shuffle_mul(Q, A, BC))) {
            detail = "associativity failed at trial " + std::to_string(trial);
            return false;
        }
        if (!(AB.degree == dv_add(A.degree, B.degree))) {
            detail = "grading failed at trial " + std::to_string(trial);
            return false;
        }
    }
    // Grading additivity across vertices as well.
    Quiver A2 = quiver_a2();
    ShuffleElement P = shuffle_mul(A2, shuffle_generator(A2, "1", 1),
                                   shuffle_generator(A2, "2", -1));
    if (!(P.degree == DimVector{{"1", 1}, {"2", 1}})) {
        detail = "two-vertex grading failed";
        return false;
    }
    detail = "golden + 50 triples";
    return true;
}

// ---- criterion 5: word action == shuffle-image action ----

bool crit5(std::string& detail) {
    long checked = 0;
    for (const Quiver& Q : {quiver_a1(), quiver_a2(), quiver_jordan()}) {
        // Words of length 1..3 over (vertex, exponent) with exponents in [-2,2].
        std::vector<std::pair<std::string, int>> letters;
        for (const std::string& i : Q.vertices())
            for (int e = -2; e <= 2; ++e) letters.emplace_back(i, e);
        std::vector<std::vector<std::pair<std::string, int>>> words;
        for (const auto& a : letters) {
            words.push_back({a});
            for (const auto& b : letters) {
                words.push_back({a, b});
                for (const auto& c : letters) words.push_back({a, b, c});
            }
        }
        std::vector<ModuleVector> inputs;
        for (const DimVector& w : grid(Q, 2))
            for (const FixedPointLabel& S : all_labels(Q, w)) inputs.push_back(basis_vector(S));
        for (const auto& word : words) {
            ShuffleElement R = word_to_shuffle(Q, word);
            for (const ModuleVector& x : inputs) {
                if (!(act_word_f(Q, word, x) == act_shuffle(Q, R, x))) {
                    detail = "word length " + std::to_string(word.size()) + " mismatch";
                    return false;
                }
                ++checked;
            }
        }
    }
    detail = std::to_string(checked) + " applications";
    return true;
}

// ---- criterion 6: wheel vanishing of length-3 word images ----

bool crit6(std::string& detail) {
    long checked = 0;
    for (const Quiver& Q : {quiver_jordan(), quiver_a2()}) {
        std::vector<std::string> verts = Q.vertices();
        for (const std::string& i1 : verts)
            for (const std::string& i2 : verts)
                for (const std::string& i3 : verts)
                    for (int e1 = -1; e1 <= 1; ++e1)
                        for (int e2 = -1; e2 <= 1; ++e2)
                            for (int e3 = -1; e3 <= 1; ++e3) {
                                ShuffleElement R = word_to_shuffle(
                                    Q, {{i1, e1}, {i2, e2}, {i3, e3}});
                                WheelReport rep = wheel_check(Q, R);
                                if (!rep.pass) {
                                    detail = "word (" + i1 + "," + std::to_string(e1) + ")(" +
                                             i2 + "," + std::to_string(e2) + ")(" + i3 + "," +
                                             std::to_string(e3) + "): " + rep.first_violation;
                                    return false;
                                }
                                checked += rep.checked;
                            }
    }
    detail = std::to_string(checked) + " specializations";
    return true;
}

// ---- criterion 7: R-block limit scalars and generator limits ----

bool crit7(std::string& detail) {
    long checked = 0, skipped = 0;
    Quiver A1 = quiver_a1();
    for (long wn : {1L, 2L}) {
        LimitCheckReport rep = limit_checks(A1, "1", DimVector{{"1", wn}}, wn);
        if (!rep.pass) {
            detail = "one-vertex w=(" + std::to_string(wn) + "): " + rep.failures.front();
            return false;
        }
        checked += rep.checked;
        skipped += rep.skipped;
    }
    Quiver J = quiver_jordan();
    for (long wn : {1L, 2L}) {
        LimitCheckReport rep = limit_checks(J, "1", DimVector{{"1", wn}}, 1);
        if (!rep.pass) {
            detail = "loop quiver w=(" + std::to_string(wn) + "): " + rep.failures.front();
            return false;
        }
        checked += rep.checked;
        skipped += rep.skipped;
    }
    detail = std::to_string(checked) + " limits, " + std::to_string(skipped) +
             " outside raising scope";
    return true;
}

// ---- criterion 8: Gram diagonal nonzero; one-vertex v=1,w=1 entry is 1 ----

bool crit8(std::string& detail) {
    long checked = 0;
    for (const Quiver& Q : {quiver_a1(), quiver_jordan(), quiver_a2()}) {
        for (const DimVector& w : grid(Q, 2))
            for (const FixedPointLabel& S : all_labels(Q, w)) {
                if (gram_diagonal(Q, S) == RationalFunction{}) {
                    detail = "zero Gram entry at " + S.str() + " w=" + dv_str(Q, w);
                    return false;
                }
                ++checked;
            }
    }
    Quiver A1 = quiver_a1();
    FixedPointLabel top(DimVector{{"1", 1}}, {{"1", {1}}});
    if (!(gram_diagonal(A1, top) == RationalFunction{1L})) {
        detail = "one-vertex v=1,w=1 Gram entry != 1";
        return false;
    }
    detail = std::to_string(checked) + " entries + golden";
    return true;
}

// ---- criterion 9: coproduct commutator identity on the tensor square ----

bool crit9(std::string& detail) {
    Quiver Q = quiver_a1();
    RelationSuiteReport rep =
        coproduct_relation_check(Q, DimVector{{"1", 1}}, DimVector{{"1", 1}}, "1");
    if (!rep.pass) {
        detail = rep.failures.front();
        return false;
    }
    detail = std::to_string(rep.checked) + " tensor identities";
    return true;
}

// ---- criterion 10: kernel properties of the series/serialization layer ----

bool crit10(std::string& detail) {
    std::mt19937 rng(424243);
    std::uniform_int_distribution<int> nterms(1, 6), coeff(-9, 9), expo(-3, 3), dpick(-4, 4);
    std::vector<VarId> pool{VarId::qh(), VarId::t("a"), VarId::u("1", 1), VarId::aux("y")};
    std::uniform_int_distribution<std::size_t> vpick(0, pool.size() - 1);

    auto random_laurent = [&]() {
        RationalFunction f;
        int n = nterms(rng);
        for (int t = 0; t < n; ++t) {
            int c = coeff(rng);
            if (c == 0) c = 1;
            RationalFunction term{static_cast<long>(c)};
            int nv = 1 + (rng() % 3);
            for (int k = 0; k < nv; ++k) {
                int e = expo(rng);
                if (e != 0) term = term * RationalFunction::var(pool[vpick(rng)], e);
            }
            f += term;
        }
        return f;
    };

    for (int trial = 0; trial < 1000; ++trial) {
        RationalFunction f = random_laurent();
        VarId var = pool[vpick(rng)];
        if (!(delta_coefficient(f, var, dpick(rng)) == RationalFunction{})) {
            detail = "nonzero delta-coefficient of a Laurent polynomial, trial " +
                     std::to_string(trial);
            return false;
        }
    }

    for (int trial = 0; trial < 200; ++trial) {
        RationalFunction num = random_laurent();
        RationalFunction den = random_laurent();
        if (den == RationalFunction{}) den = RationalFunction{1L};
        RationalFunction f = num / den;
        RationalFunction g = parse_rational(f.str());
        if (!(g == f)) {
            detail = "parse round-trip mismatch at trial " + std::to_string(trial);
            return false;
        }
        if (g.str() != f.str()) {
            detail = "canonical serialization not idempotent at trial " +
                     std::to_string(trial);
            return false;
        }
    }

    // Series extraction round-trip: the d-th coefficient of f * y^k shifts.
    VarId y = VarId::aux("y");
    for (int trial = 0; trial < 100; ++trial) {
        RationalFunction f = random_laurent();
        int d = dpick(rng), k = expo(rng);
        RationalFunction shifted = (k == 0) ? f : f * RationalFunction::var(y, k);
        for (Direction dir : {Direction::AT_INFINITY, Direction::AT_ZERO}) {
            if (!(expansion_coefficient(shifted, y, d + k, dir) ==
                  expansion_coefficient(f, y, d, dir))) {
                detail = "series shift mismatch at trial " + std::to_string(trial);
                return false;
            }
        }
    }
    detail = "1000 delta + 200 round-trip + 100 shifts";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_only = std::atoi(argv[1]);
    std::cout << "acceptance suite (exact symbolic checks, fixed seeds)" << std::endl;
    criterion(1, "full relation suite, one-vertex quiver, w=(1),(2), d,k in [-2,2]", crit1);
    criterion(2, "vacuum commutator bracket on loop and two-vertex quivers", crit2);
    criterion(3, "commutator identity in free Chern-root symbols, entries <= 2", crit3);
    criterion(4, "kernel product golden, associativity x50, grading", crit4);
    criterion(5, "word action matches shuffle-image action, words <= 3", crit5);
    criterion(6, "wheel vanishing of length-3 word images", crit6);
    criterion(7, "R-block diagonal and generator limits", crit7);
    criterion(8, "Gram diagonal nonzero; unit golden entry", crit8);
    criterion(9, "coproduct commutator identity on the tensor square", crit9);
    criterion(10, "delta/series/serialization kernel properties", crit10);
    if (g_failures != 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
