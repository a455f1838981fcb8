#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "kha/quiver.hpp"
#include "kha/series.hpp"

namespace kha {

// Element of the shuffle algebra: a rational function in z[i,1..n_i],
// symmetric within each vertex block. Algebra elements proper are Laurent
// polynomials; the flag is observable via is_polynomial().
struct ShuffleElement {
    DimVector degree;
    RationalFunction value;

    bool is_polynomial() const { return value.is_polynomial(); }
};

inline ShuffleElement shuffle_unit() { return {DimVector{}, RationalFunction(1L)}; }

inline ShuffleElement shuffle_generator(const Quiver& Q, const std::string& i, int d) {
    Q.require_vertex(i);
    return {dv_unit(i), RationalFunction::var(VarId::z(i, 1), d)};
}

namespace detail {

constexpr long kMaxSlotsPerVertex = 6;

inline void check_degree_limit(const DimVector& n) {
    for (const auto& [i, k] : n) {
        if (k < 0) throw Error(errc::malformed_input, "negative shuffle degree");
        if (k > kMaxSlotsPerVertex)
            throw Error(errc::degree_limit, "vertex '" + i + "' needs " + std::to_string(k) +
                                                " slots, supported maximum is " +
                                                std::to_string(kMaxSlotsPerVertex));
    }
}

inline LaurentPoly relabel(const LaurentPoly& p, const std::map<VarId, VarId>& ren) {
    LaurentPoly out;
    for (const auto& [m, c] : p.terms) {
        Monomial nm;
        for (const auto& [v, e] : m) {
            auto it = ren.find(v);
            nm[it == ren.end() ? v : it->second] += e;
        }
        for (auto it = nm.begin(); it != nm.end();)
            it = (it->second == 0) ? nm.erase(it) : std::next(it);
        out.add_term(nm, c);
    }
    return out;
}

inline RationalFunction relabel(const RationalFunction& f, const std::map<VarId, VarId>& ren) {
    return RationalFunction(relabel(f.num, ren), relabel(f.den, ren));
}

// Per-vertex permutations sigma: vertex -> image vector (1-based slots).
using SlotPerm = std::map<std::string, std::vector<int>>;

inline std::vector<SlotPerm> all_slot_perms(const DimVector& n) {
    std::vector<SlotPerm> acc{SlotPerm{}};
    for (const auto& [i, k] : n) {
        if (k <= 0) continue;
        std::vector<int> base(k);
        std::iota(base.begin(), base.end(), 1);
        std::vector<std::vector<int>> perms;
        do {
            perms.push_back(base);
        } while (std::next_permutation(base.begin(), base.end()));
        std::vector<SlotPerm> next;
        next.reserve(acc.size() * perms.size());
        for (const auto& partial : acc)
            for (const auto& p : perms) {
                SlotPerm s = partial;
                s[i] = p;
                next.push_back(std::move(s));
            }
        acc = std::move(next);
    }
    return acc;
}

// Coset representatives for Sym(n_i) / (Sym(a_i) x Sym(n_i - a_i)) at each
// vertex: images increase within the first a_i slots and within the rest.
// Summing a kernel that is symmetric within each block over these
// representatives equals the full symmetrization divided by a_i! (n_i-a_i)!.
inline std::vector<SlotPerm> all_shuffle_perms(const DimVector& n, const DimVector& a) {
    std::vector<SlotPerm> acc{SlotPerm{}};
    for (const auto& [i, k] : n) {
        if (k <= 0) continue;
        std::size_t ai = static_cast<std::size_t>(dv_get(a, i));
        std::vector<bool> pick(static_cast<std::size_t>(k), false);
        std::fill(pick.begin(), pick.begin() + ai, true);
        std::vector<std::vector<int>> imgs;
        do {
            std::vector<int> img(static_cast<std::size_t>(k));
            std::size_t pa = 0, pb = ai;
            for (int s = 1; s <= k; ++s)
                (pick[static_cast<std::size_t>(s) - 1] ? img[pa++] : img[pb++]) = s;
            imgs.push_back(std::move(img));
        } while (std::prev_permutation(pick.begin(), pick.end()));
        std::vector<SlotPerm> next;
        next.reserve(acc.size() * imgs.size());
        for (const auto& partial : acc)
            for (const auto& p : imgs) {
                SlotPerm s = partial;
                s[i] = p;
                next.push_back(std::move(s));
            }
        acc = std::move(next);
    }
    return acc;
}

inline std::map<VarId, VarId> perm_renaming(const SlotPerm& s) {
    std::map<VarId, VarId> ren;
    for (const auto& [i, img] : s)
        for (std::size_t a = 1; a <= img.size(); ++a)
            if (static_cast<int>(a) != img[a - 1])
                ren[VarId::z(i, static_cast<int>(a))] = VarId::z(i, img[a - 1]);
    return ren;
}

// A pending denominator factor (z_{i,b} - z_{i,a}) of the unsymmetrized kernel.
struct DiffPair {
    std::string vertex;
    int a;
    int b;
};

// Symmetrize P / prod (z_b - z_a) over all slot permutations, exactly.
// Every summand is placed over the full product of same-vertex differences
// (z_{i,c} - z_{i,d}), c < d; after summation that product must divide the
// numerator, which is the kernel-cancellation integrity check.
inline LaurentPoly sym_over_diffs(const LaurentPoly& P, const std::vector<DiffPair>& pairs,
                                  const DimVector& n, const std::vector<SlotPerm>& perms) {
    std::vector<std::tuple<std::string, int, int>> allpairs; // factor z_c - z_d, c < d
    std::map<std::string, std::map<std::pair<int, int>, std::size_t>> pindex;
    for (const auto& [i, k] : n)
        for (int c = 1; c <= k; ++c)
            for (int d = c + 1; d <= k; ++d) {
                pindex[i][{c, d}] = allpairs.size();
                allpairs.emplace_back(i, c, d);
            }
    std::vector<LaurentPoly> factor;
    factor.reserve(allpairs.size());
    for (const auto& [i, c, d] : allpairs)
        factor.push_back(LaurentPoly::var(VarId::z(i, c)) - LaurentPoly::var(VarId::z(i, d)));

    LaurentPoly total;
    for (const auto& sigma : perms) {
        LaurentPoly term = relabel(P, perm_renaming(sigma));
        int sign = 1;
        std::vector<bool> used(allpairs.size(), false);
        for (const auto& dp : pairs) {
            const auto& img = sigma.at(dp.vertex);
            int p = img[dp.a - 1];
            int r = img[dp.b - 1];
            // (z_r - z_p) = +factor if r < p, -factor if p < r
            if (p < r) sign = -sign;
            auto key = std::make_pair(std::min(p, r), std::max(p, r));
            std::size_t idx = pindex.at(dp.vertex).at(key);
            if (used[idx]) throw Error(errc::shuffle_cancel, "repeated kernel pair");
            used[idx] = true;
        }
        for (std::size_t k = 0; k < allpairs.size(); ++k)
            if (!used[k]) term *= factor[k];
        if (sign < 0) term = -term;
        total += term;
    }
    for (const auto& f : factor) {
        try {
            total = divide_exact(total, f);
        } catch (const Error&) {
            throw Error(errc::shuffle_cancel, "difference factor does not divide symmetrized kernel");
        }
    }
    return total;
}

inline LaurentPoly sym_over_diffs(const LaurentPoly& P, const std::vector<DiffPair>& pairs,
                                  const DimVector& n) {
    return sym_over_diffs(P, pairs, n, all_slot_perms(n));
}

// Numerator parts of zeta_{ii}(z_b/z_a) beyond the 1/(z_b - z_a) pole:
// (z_b - q z_a) / qh and, per loop e at i, qh (1 - z_a/(t_e z_b)) (1 - q z_b/(t_e z_a)).
inline LaurentPoly zeta_same_vertex_numer(const Quiver& Q, const std::string& i,
                                          const VarId& za, const VarId& zb) {
    LaurentPoly num = LaurentPoly::var(zb) - rf_q().num * LaurentPoly::var(za);
    num = num.mul_monomial(Rat(1), Monomial{{VarId::qh(), -1}});
    for (const auto& e : Q.loops_at(i)) {
        Monomial za_over_tzb{{za, 1}, {VarId::t(e.id), -1}, {zb, -1}};
        Monomial qzb_over_tza{{VarId::qh(), 2}, {zb, 1}, {VarId::t(e.id), -1}, {za, -1}};
        LaurentPoly f1 = LaurentPoly::one() - LaurentPoly::monomial(Rat(1), za_over_tzb);
        f1 = f1.mul_monomial(Rat(1), Monomial{{VarId::qh(), 1}});
        LaurentPoly f2 = LaurentPoly::one() - LaurentPoly::monomial(Rat(1), qzb_over_tza);
        num *= f1 * f2;
    }
    return num;
}

// zeta_{ji}(z_{j,b}/z_{i,a}) for i != j: a Laurent polynomial.
inline LaurentPoly zeta_cross_vertex(const Quiver& Q, const std::string& i, const std::string& j,
                                     const VarId& zia, const VarId& zjb) {
    LaurentPoly out = LaurentPoly::one();
    for (const auto& e : Q.edges_from_to(j, i)) {
        Monomial inv{{zia, 1}, {VarId::t(e.id), -1}, {zjb, -1}};
        LaurentPoly f = LaurentPoly::one() - LaurentPoly::monomial(Rat(1), inv);
        out *= f.mul_monomial(Rat(1), Monomial{{VarId::qh(), 1}});
    }
    for (const auto& e : Q.edges_from_to(i, j)) {
        Monomial fwd{{VarId::qh(), 2}, {zjb, 1}, {VarId::t(e.id), -1}, {zia, -1}};
        out *= LaurentPoly::one() - LaurentPoly::monomial(Rat(1), fwd);
    }
    return out;
}

inline Rat factorial(long n) {
    Rat r(1);
    for (long k = 2; k <= n; ++k) r *= Rat(k);
    return r;
}

} // namespace detail

inline ShuffleElement symmetrize(const Quiver& Q, const RationalFunction& f, const DimVector& n) {
    detail::check_degree_limit(n);
    for (const auto& [i, k] : n) Q.require_vertex(i);
    RationalFunction acc;
    for (const auto& sigma : detail::all_slot_perms(n))
        acc += detail::relabel(f, detail::perm_renaming(sigma));
    return {n, acc};
}

// Shuffle product.  Both factors are symmetric within their own slot blocks,
// so the symmetrization runs over shuffle coset representatives only; that is
// exactly the usual 1/(n! n'!)-normalized product.
inline ShuffleElement shuffle_mul(const Quiver& Q, const ShuffleElement& A,
                                  const ShuffleElement& B) {
    DimVector N = dv_add(A.degree, B.degree);
    detail::check_degree_limit(N);

    // shift B's slots above A's: z[j,s] -> z[j, n_j + s]
    std::map<VarId, VarId> shift;
    for (const auto& [j, nb] : B.degree)
        for (long s = 1; s <= nb; ++s)
            shift[VarId::z(j, static_cast<int>(s))] =
                VarId::z(j, static_cast<int>(dv_get(A.degree, j) + s));

    const bool structural = A.value.is_polynomial() && B.value.is_polynomial();

    if (structural) {
        LaurentPoly P = A.value.as_laurent() * detail::relabel(B.value.as_laurent(), shift);
        std::vector<detail::DiffPair> pairs;
        for (const auto& i : Q.vertices()) {
            long na = dv_get(A.degree, i);
            for (const auto& j : Q.vertices()) {
                long nbj = dv_get(B.degree, j);
                for (long a = 1; a <= na; ++a)
                    for (long b = 1; b <= nbj; ++b) {
                        VarId zia = VarId::z(i, static_cast<int>(a));
                        VarId zjb = VarId::z(j, static_cast<int>(dv_get(A.degree, j) + b));
                        if (i == j) {
                            P *= detail::zeta_same_vertex_numer(Q, i, zia, zjb);
                            pairs.push_back({i, static_cast<int>(a),
                                             static_cast<int>(dv_get(A.degree, j) + b)});
                        } else {
                            P *= detail::zeta_cross_vertex(Q, i, j, zia, zjb);
                        }
                    }
            }
        }
        LaurentPoly sym =
            detail::sym_over_diffs(P, pairs, N, detail::all_shuffle_perms(N, A.degree));
        return {N, RationalFunction(sym)};
    }

    // generic rational path (flagged non-polynomial elements)
    RationalFunction kernel = A.value * detail::relabel(B.value, shift);
    for (const auto& i : Q.vertices()) {
        long na = dv_get(A.degree, i);
        for (const auto& j : Q.vertices()) {
            long nbj = dv_get(B.degree, j);
            for (long a = 1; a <= na; ++a)
                for (long b = 1; b <= nbj; ++b) {
                    RationalFunction x =
                        RationalFunction::var(VarId::z(j, static_cast<int>(dv_get(A.degree, j) + b))) /
                        RationalFunction::var(VarId::z(i, static_cast<int>(a)));
                    kernel *= zeta(Q, j, i, x);
                }
        }
    }
    RationalFunction acc;
    for (const auto& sigma : detail::all_shuffle_perms(N, A.degree))
        acc += detail::relabel(kernel, detail::perm_renaming(sigma));
    return {N, acc};
}

// Word image: prefactor-free Sym of prod_k z_{i_k,a_k}^{d_k} prod_{k<l}
// zeta_{i_l i_k}(z_{i_l,a_l}/z_{i_k,a_k}), slots assigned first-come per vertex.
inline ShuffleElement word_to_shuffle(const Quiver& Q,
                                      const std::vector<std::pair<std::string, int>>& word) {
    DimVector N;
    std::vector<int> slot(word.size());
    for (std::size_t k = 0; k < word.size(); ++k) {
        Q.require_vertex(word[k].first);
        slot[k] = static_cast<int>(++N[word[k].first]);
    }
    detail::check_degree_limit(N);
    if (word.empty()) return shuffle_unit();

    LaurentPoly P = LaurentPoly::one();
    for (std::size_t k = 0; k < word.size(); ++k)
        P *= LaurentPoly::var(VarId::z(word[k].first, slot[k]), word[k].second);
    std::vector<detail::DiffPair> pairs;
    for (std::size_t k = 0; k < word.size(); ++k)
        for (std::size_t l = k + 1; l < word.size(); ++l) {
            const auto& ik = word[k].first;
            const auto& il = word[l].first;
            VarId zk = VarId::z(ik, slot[k]);
            VarId zl = VarId::z(il, slot[l]);
            if (ik == il) {
                P *= detail::zeta_same_vertex_numer(Q, ik, zk, zl);
                pairs.push_back({ik, slot[k], slot[l]});
            } else {
                P *= detail::zeta_cross_vertex(Q, ik, il, zk, zl);
            }
        }
    LaurentPoly sym = detail::sym_over_diffs(P, pairs, N);
    return {N, RationalFunction(sym)};
}

inline bool shuffle_eq(const ShuffleElement& A, const ShuffleElement& B) {
    return A.degree == B.degree && A.value == B.value;
}

inline bool is_symmetric([[maybe_unused]] const Quiver& Q, const ShuffleElement& R) {
    for (const auto& [i, k] : R.degree)
        for (long a = 1; a + 1 <= k; ++a) {
            std::map<VarId, VarId> swap_ren{
                {VarId::z(i, static_cast<int>(a)), VarId::z(i, static_cast<int>(a + 1))},
                {VarId::z(i, static_cast<int>(a + 1)), VarId::z(i, static_cast<int>(a))}};
            if (!(detail::relabel(R.value, swap_ren) == R.value)) return false;
        }
    return true;
}

// Wheel-condition report: all specializations checked with their outcomes.
struct WheelReport {
    bool pass = true;
    bool vacuous = true;
    long checked = 0;
    std::string first_violation; // empty when pass
};

// For each edge e: i->j and admissible slot triple, the polynomial value must
// vanish under z_{i,a} = q z_{j,b}/t_e = q z_{i,c} and under
// z_{j,a} = t_e z_{i,b} = q z_{j,c}.
inline WheelReport wheel_check(const Quiver& Q, const ShuffleElement& R) {
    LaurentPoly P = R.value.as_laurent();
    WheelReport rep;
    auto run = [&](const std::string& holder, const std::string& other, const Edge& e,
                   bool forward) {
        long nh = dv_get(R.degree, holder);
        long no = dv_get(R.degree, other);
        bool loop = holder == other;
        for (long a = 1; a <= nh; ++a)
            for (long c = 1; c <= nh; ++c) {
                if (a == c) continue;
                for (long b = 1; b <= no; ++b) {
                    if (loop && (b == a || b == c)) continue;
                    VarId free = VarId::z(holder, static_cast<int>(c));
                    LaurentPoly s = P;
                    // z_{holder,a} = q * z_{holder,c}
                    s = s.subst_monomial(VarId::z(holder, static_cast<int>(a)), Rat(1),
                                         Monomial{{VarId::qh(), 2}, {free, 1}});
                    // forward wheel: z_{other,b} = t_e z_{holder,c}
                    // backward wheel: z_{other,b} = (q/t_e) z_{holder,c}
                    Monomial img = forward
                                       ? Monomial{{VarId::t(e.id), 1}, {free, 1}}
                                       : Monomial{{VarId::qh(), 2}, {VarId::t(e.id), -1}, {free, 1}};
                    s = s.subst_monomial(VarId::z(other, static_cast<int>(b)), Rat(1), img);
                    ++rep.checked;
                    rep.vacuous = false;
                    if (!s.is_zero() && rep.pass) {
                        rep.pass = false;
                        rep.first_violation = "edge " + e.id + (forward ? " wheel-1 " : " wheel-2 ") +
                                              "(a,b,c)=(" + std::to_string(a) + "," +
                                              std::to_string(b) + "," + std::to_string(c) + ") at " +
                                              holder;
                    }
                }
            }
    };
    for (const auto& e : Q.edges()) {
        run(e.src, e.dst, e, true);  // z_{i,a} = q z_{j,b}/t_e = q z_{i,c}
        run(e.dst, e.src, e, false); // z_{j,a} = t_e z_{i,b} = q z_{j,c}
    }
    return rep;
}

} // namespace kha
