#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "kha/rational_function.hpp"

namespace kha {

enum class Direction { AT_INFINITY, AT_ZERO };

// Truncated Laurent expansion of a rational function in one variable, with
// coefficients exact rational functions in the remaining variables. The window
// [lo, hi] is contiguous and anchored at the structural edge of the expansion.
struct LaurentSeries {
    VarId var;
    Direction direction = Direction::AT_INFINITY;
    int lo = 0;
    int hi = -1; // empty window when hi < lo
    std::map<int, RationalFunction> coeffs; // exponent -> coefficient
    int order = 8; // number of coefficients requested

    RationalFunction coeff(int e) const {
        auto it = coeffs.find(e);
        return it == coeffs.end() ? RationalFunction() : it->second;
    }

    // Exponent of the first structurally guaranteed nonzero coefficient
    // (hi at infinity, lo at zero); only meaningful for nonzero functions.
    int edge() const { return direction == Direction::AT_INFINITY ? hi : lo; }
};

namespace detail {

// Inverse-of-denominator coefficients: at infinity, 1/den = v^{-K} sum C_m v^{-m}
// with K the top v-degree of den; at zero the mirror with the bottom degree.
// C_0 = 1/D_edge and C_m = -(1/D_edge) * sum_{j=1..m} D_{edge -/+ j} C_{m-j}.
// Each C_m is held as a numerator polynomial over the known denominator
// edge_poly^{m+1}, so the whole recurrence stays in polynomial arithmetic and
// the rational assembly happens exactly once per requested coefficient.
struct DenExpansion {
    int edge_exp = 0;
    LaurentPoly edge_poly;
    std::map<int, LaurentPoly> parts;
    Direction dir = Direction::AT_INFINITY;
    std::vector<LaurentPoly> N;        // C_m = N_m / edge_poly^{m+1}
    std::vector<LaurentPoly> edge_pow; // edge_poly^k

    DenExpansion(const LaurentPoly& den, const VarId& v, Direction d) : dir(d) {
        parts = den.decompose(v);
        if (parts.empty()) throw Error(errc::division_by_zero, "zero denominator");
        edge_exp = (dir == Direction::AT_INFINITY) ? parts.rbegin()->first : parts.begin()->first;
        edge_poly = parts.at(edge_exp);
        N.push_back(LaurentPoly::one());
        edge_pow.push_back(LaurentPoly::one());
    }

    const LaurentPoly& epow(std::size_t k) {
        while (edge_pow.size() <= k) edge_pow.push_back(edge_pow.back() * edge_poly);
        return edge_pow[k];
    }

    const LaurentPoly& numer(std::size_t m) {
        while (N.size() <= m) {
            std::size_t k = N.size();
            LaurentPoly acc;
            for (std::size_t j = 1; j <= k; ++j) {
                int e = (dir == Direction::AT_INFINITY) ? edge_exp - static_cast<int>(j)
                                                        : edge_exp + static_cast<int>(j);
                auto it = parts.find(e);
                if (it == parts.end()) continue;
                acc += it->second * N[k - j] * epow(j - 1);
            }
            N.push_back(-acc);
        }
        return N[m];
    }
};

} // namespace detail

// Exact coefficient of var^d in the Laurent expansion of f in the given
// direction. No truncation is involved; the recurrence is run exactly as far
// as the requested exponent needs.
inline RationalFunction expansion_coefficient(const RationalFunction& f, const VarId& var,
                                              int d, Direction dir) {
    if (f.is_zero()) return RationalFunction();
    auto nparts = f.num.decompose(var);
    detail::DenExpansion den(f.den, var, dir);
    std::vector<std::pair<const LaurentPoly*, std::size_t>> uses;
    std::size_t M = 0;
    for (const auto& [n, np] : nparts) {
        // exponent n - edge - m at infinity, n - edge + m at zero
        long m = (dir == Direction::AT_INFINITY) ? (n - den.edge_exp - d) : (d - n + den.edge_exp);
        if (m < 0) continue;
        uses.emplace_back(&np, static_cast<std::size_t>(m));
        M = std::max(M, static_cast<std::size_t>(m));
    }
    if (uses.empty()) return RationalFunction();
    den.numer(M);     // materialize the recurrence (grows the power cache too)
    den.epow(M + 1);  // materialize every needed denominator power
    LaurentPoly acc;
    for (const auto& [np, m] : uses) {
        LaurentPoly term = (*np) * den.numer(m);
        acc += term * den.epow(M - m);
    }
    return RationalFunction(acc, den.epow(M + 1));
}

// Structural edge exponent of the expansion: the largest (at infinity) or
// smallest (at zero) exponent carrying a nonzero coefficient.
inline int expansion_edge(const RationalFunction& f, const VarId& var, Direction dir) {
    if (f.is_zero()) throw Error(errc::malformed_input, "expansion edge of zero");
    auto [nlo, nhi] = f.num.exp_range(var);
    auto [dlo, dhi] = f.den.exp_range(var);
    return dir == Direction::AT_INFINITY ? nhi - dhi : nlo - dlo;
}

inline LaurentSeries expand(const RationalFunction& f, const VarId& var, Direction dir,
                            int order = 8) {
    LaurentSeries s;
    s.var = var;
    s.direction = dir;
    s.order = order;
    if (f.is_zero() || order <= 0) return s;
    int e = expansion_edge(f, var, dir);
    if (dir == Direction::AT_INFINITY) {
        s.hi = e;
        s.lo = e - order + 1;
    } else {
        s.lo = e;
        s.hi = e + order - 1;
    }
    for (int k = s.lo; k <= s.hi; ++k) {
        RationalFunction c = expansion_coefficient(f, var, k, dir);
        if (!c.is_zero()) s.coeffs.emplace(k, std::move(c));
    }
    return s;
}

// The delta coefficient: [var^d] of the expansion at infinity minus [var^d] of
// the expansion at zero. Vanishes identically on Laurent polynomials; on
// genuine rational functions it picks up pole contributions.
inline RationalFunction delta_coefficient(const RationalFunction& f, const VarId& var, int d) {
    RationalFunction a = expansion_coefficient(f, var, d, Direction::AT_INFINITY);
    RationalFunction b = expansion_coefficient(f, var, d, Direction::AT_ZERO);
    return a - b;
}

// Limit of f as var -> infinity (AT_INFINITY) or var -> 0 (AT_ZERO).
// Throws when the function diverges in that direction.
inline RationalFunction limit_value(const RationalFunction& f, const VarId& var, Direction dir) {
    if (f.is_zero()) return RationalFunction();
    int e = expansion_edge(f, var, dir);
    bool divergent = (dir == Direction::AT_INFINITY) ? (e > 0) : (e < 0);
    if (divergent)
        throw Error(errc::divergent_limit, "leading exponent " + std::to_string(e) + " in " + var.str());
    if (e != 0) return RationalFunction();
    return expansion_coefficient(f, var, 0, dir);
}

} // namespace kha
