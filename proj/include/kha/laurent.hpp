#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kha/rational.hpp"
#include "kha/varid.hpp"

namespace kha {

// A Laurent monomial: finitely many variables with nonzero integer exponents.
using Monomial = std::map<VarId, int>;

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (const auto& [v, e] : b) {
        int ne = (r.count(v) ? r[v] : 0) + e;
        if (ne == 0) r.erase(v); else r[v] = ne;
    }
    return r;
}

inline Monomial mono_pow(const Monomial& m, int e) {
    Monomial r;
    if (e == 0) return r;
    for (const auto& [v, k] : m) r[v] = k * e;
    return r;
}

inline Monomial mono_inverse(const Monomial& m) { return mono_pow(m, -1); }

// Canonical monomial order: scan variables in increasing VarId order (QH first,
// making it most significant); at the first variable where exponents differ
// (absent = 0), the greater exponent wins. Total and archimedean-free; it is the
// order behind every canonical serialization in this library.
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto ia = a.begin();
        auto ib = b.begin();
        while (ia != a.end() || ib != b.end()) {
            if (ia == a.end()) return 0 < ib->second;
            if (ib == b.end()) return ia->second < 0;
            if (ia->first < ib->first) return ia->second < 0;
            if (ib->first < ia->first) return 0 < ib->second;
            if (ia->second != ib->second) return ia->second < ib->second;
            ++ia;
            ++ib;
        }
        return false;
    }
};

inline std::string mono_str(const Monomial& m) {
    std::string s;
    bool first = true;
    for (const auto& [v, e] : m) {
        if (!first) s += "*";
        s += v.str() + "^" + std::to_string(e);
        first = false;
    }
    return s;
}

// Exact multivariate Laurent polynomial over Q. Terms are kept in canonical
// order with no zero coefficients and no zero exponents.
class LaurentPoly {
public:
    using TermMap = std::map<Monomial, Rat, MonoLess>;
    TermMap terms;

    LaurentPoly() = default;
    explicit LaurentPoly(const Rat& c) {
        if (c != 0) terms.emplace(Monomial{}, c);
    }
    explicit LaurentPoly(long c) : LaurentPoly(Rat(c)) {}

    static LaurentPoly one() { return LaurentPoly(Rat(1)); }

    static LaurentPoly var(const VarId& v, int e = 1) {
        LaurentPoly p;
        Monomial m;
        if (e != 0) m[v] = e;
        p.terms.emplace(std::move(m), Rat(1));
        return p;
    }

    static LaurentPoly monomial(const Rat& c, const Monomial& m) {
        LaurentPoly p;
        if (c != 0) p.terms.emplace(m, c);
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty());
    }

    Rat constant_value() const {
        if (terms.empty()) return Rat(0);
        if (!is_constant()) throw Error(errc::malformed_input, "polynomial is not constant");
        return terms.begin()->second;
    }

    bool is_monomial() const { return terms.size() == 1; }

    std::size_t term_count() const { return terms.size(); }

    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [m, c] : o.terms) add_term(m, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& [m, c] : r.terms) c = -c;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms) r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly scaled(const Rat& c) const {
        LaurentPoly r;
        if (c == 0) return r;
        for (const auto& [m, k] : terms) r.terms.emplace(m, k * c);
        return r;
    }

    LaurentPoly mul_monomial(const Rat& c, const Monomial& m) const {
        LaurentPoly r;
        if (c == 0) return r;
        for (const auto& [mm, k] : terms) r.terms.emplace(mono_mul(mm, m), k * c);
        return r;
    }

    LaurentPoly pow(unsigned long e) const {
        LaurentPoly acc = one();
        LaurentPoly b = *this;
        while (e) {
            if (e & 1) acc *= b;
            b *= b;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms == b.terms; }

    // Exponent window of one variable across all terms; (0,0) if it never occurs.
    std::pair<int, int> exp_range(const VarId& v) const {
        bool seen = false;
        int lo = 0, hi = 0;
        for (const auto& [m, c] : terms) {
            auto it = m.find(v);
            int e = (it == m.end()) ? 0 : it->second;
            if (!seen) { lo = hi = e; seen = true; }
            else { lo = std::min(lo, e); hi = std::max(hi, e); }
        }
        return {lo, hi};
    }

    // Coefficient polynomials per exponent of one variable (the variable removed).
    std::map<int, LaurentPoly> decompose(const VarId& v) const {
        std::map<int, LaurentPoly> out;
        for (const auto& [m, c] : terms) {
            auto it = m.find(v);
            int e = (it == m.end()) ? 0 : it->second;
            Monomial rest = m;
            rest.erase(v);
            out[e].add_term(rest, c);
        }
        return out;
    }

    LaurentPoly coeff_of(const VarId& v, int e) const {
        LaurentPoly out;
        for (const auto& [m, c] : terms) {
            auto it = m.find(v);
            int k = (it == m.end()) ? 0 : it->second;
            if (k != e) continue;
            Monomial rest = m;
            rest.erase(v);
            out.add_term(rest, c);
        }
        return out;
    }

    // Substitute v -> c * m (a nonzero scalar times a monomial). Exact and closed
    // in the Laurent ring since monomials are units.
    LaurentPoly subst_monomial(const VarId& v, const Rat& c, const Monomial& m) const {
        if (c == 0) throw Error(errc::substitute_pole, "monomial substitution with zero scalar");
        LaurentPoly r;
        for (const auto& [mm, k] : terms) {
            auto it = mm.find(v);
            if (it == mm.end()) {
                r.add_term(mm, k);
                continue;
            }
            int e = it->second;
            Monomial rest = mm;
            rest.erase(v);
            r.add_term(mono_mul(rest, mono_pow(m, e)), k * rat_pow(c, e));
        }
        return r;
    }

    std::set<VarId> vars() const {
        std::set<VarId> s;
        for (const auto& [m, c] : terms)
            for (const auto& [v, e] : m) s.insert(v);
        return s;
    }

    // Positive rational content: gcd of numerators over lcm of denominators.
    Rat content() const {
        if (terms.empty()) return Rat(0);
        Int g = 0, l = 1;
        for (const auto& [m, c] : terms) {
            Int n = boost::multiprecision::numerator(c);
            Int d = boost::multiprecision::denominator(c);
            if (n < 0) n = -n;
            g = boost::multiprecision::gcd(g, n);
            l = boost::multiprecision::lcm(l, d);
        }
        return Rat(g) / Rat(l);
    }

    const Monomial& leading_monomial() const {
        if (terms.empty()) throw Error(errc::malformed_input, "leading monomial of zero");
        return terms.rbegin()->first;
    }

    Rat leading_coeff() const {
        if (terms.empty()) return Rat(0);
        return terms.rbegin()->second;
    }

    std::string str() const;
};

inline LaurentPoly operator*(const Rat& c, const LaurentPoly& p) { return p.scaled(c); }

// Canonical rendering: terms in descending monomial order; the leading
// coefficient is elided only when it is +1; later coefficients fold their sign
// into the separator and elide magnitude 1; exponents are always explicit.
inline std::string LaurentPoly::str() const {
    if (terms.empty()) return "0";
    std::string s;
    bool leading = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const Monomial& m = it->first;
        const Rat& c = it->second;
        if (leading) {
            if (m.empty()) s += rat_str(c);
            else if (c == 1) s += mono_str(m);
            else s += rat_str(c) + "*" + mono_str(m);
            leading = false;
        } else {
            Rat a = c < 0 ? Rat(-c) : c;
            s += (c < 0) ? " - " : " + ";
            if (m.empty()) s += rat_str(a);
            else if (a == 1) s += mono_str(m);
            else s += rat_str(a) + "*" + mono_str(m);
        }
    }
    return s;
}

// Exact division P / D in the Laurent ring. Greedy leading-term elimination;
// every quotient monomial must stay inside the per-variable window implied by
// the operands, which both bounds the loop and certifies inexactness.
inline LaurentPoly divide_exact(const LaurentPoly& P, const LaurentPoly& D) {
    if (D.is_zero()) throw Error(errc::division_by_zero, "division by zero polynomial");
    if (P.is_zero()) return LaurentPoly();

    std::set<VarId> vs = P.vars();
    for (const auto& v : D.vars()) vs.insert(v);
    std::map<VarId, std::pair<int, int>> window;
    for (const auto& v : vs) {
        auto [lp, hp] = P.exp_range(v);
        auto [ld, hd] = D.exp_range(v);
        window[v] = {lp - hd, hp - ld};
    }

    LaurentPoly rem = P;
    LaurentPoly quot;
    const Monomial& dlm = D.leading_monomial();
    const Rat dlc = D.leading_coeff();
    while (!rem.is_zero()) {
        Monomial qm = mono_mul(rem.leading_monomial(), mono_inverse(dlm));
        for (const auto& [v, e] : qm) {
            auto it = window.find(v);
            if (it == window.end() || e < it->second.first || e > it->second.second)
                throw Error(errc::inexact_division, "quotient leaves exponent window");
        }
        Rat qc = rem.leading_coeff() / dlc;
        quot.add_term(qm, qc);
        rem -= D.mul_monomial(qc, qm);
    }
    return quot;
}

} // namespace kha
