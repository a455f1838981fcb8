#pragma once

#include <map>

#include "kha/laurent.hpp"

namespace kha {

// Exact rational function num/den over the Laurent ring. No polynomial gcd is
// ever computed: equality is by cross-multiplication, and the only reductions
// are unit-monomial shifts and integer content/sign on the denominator. That
// makes normalization cheap and every operation exact.
class RationalFunction {
public:
    LaurentPoly num;
    LaurentPoly den;

    RationalFunction() : num(), den(LaurentPoly::one()) {}
    explicit RationalFunction(const Rat& c) : num(c), den(LaurentPoly::one()) {}
    explicit RationalFunction(long c) : num(Rat(c)), den(LaurentPoly::one()) {}
    explicit RationalFunction(LaurentPoly n) : num(std::move(n)), den(LaurentPoly::one()) {}
    RationalFunction(LaurentPoly n, LaurentPoly d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw Error(errc::division_by_zero, "zero denominator");
        normalize();
    }

    static RationalFunction var(const VarId& v, int e = 1) {
        return RationalFunction(LaurentPoly::var(v, e));
    }

    bool is_zero() const { return num.is_zero(); }

    bool is_polynomial() const { return den.is_constant() || den.is_monomial(); }

    // Denominator is a single term, so num/den is itself a Laurent polynomial.
    LaurentPoly as_laurent() const {
        if (!is_polynomial())
            throw Error(errc::malformed_input, "rational function has a multi-term denominator");
        if (den.is_zero()) throw Error(errc::division_by_zero, "zero denominator");
        const auto& [m, c] = *den.terms.begin();
        return num.mul_monomial(Rat(1) / c, mono_inverse(m));
    }

    bool is_constant() const { return num.is_constant() && den.is_constant(); }

    Rat constant_value() const { return num.constant_value() / den.constant_value(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num * b.num, a.den * b.den);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw Error(errc::division_by_zero, "division by zero rational function");
        return RationalFunction(a.num * b.den, a.den * b.num);
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }
    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num = -r.num;
        return r;
    }

    RationalFunction inverse() const {
        if (is_zero()) throw Error(errc::division_by_zero, "inverse of zero");
        return RationalFunction(den, num);
    }

    RationalFunction pow(long e) const {
        if (e == 0) return RationalFunction(Rat(1));
        if (e < 0) return inverse().pow(-e);
        return RationalFunction(num.pow(static_cast<unsigned long>(e)),
                                den.pow(static_cast<unsigned long>(e)));
    }

    // Exact equality of the represented functions (cross-multiplication).
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num * b.den == b.num * a.den;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    std::string str() const {
        if (den == LaurentPoly::one()) return num.str();
        auto wrap = [](const LaurentPoly& p) {
            bool simple = p.term_count() == 1 &&
                          (p.terms.begin()->second == 1 || p.terms.begin()->first.empty());
            return simple ? p.str() : "(" + p.str() + ")";
        };
        return wrap(num) + " / " + wrap(den);
    }

private:
    // Canonical representative of the (num, den) pair up to units:
    //  - zero is 0/1
    //  - den is shifted to an honest polynomial with per-variable minimum 0
    //  - den has integer content 1 and positive leading coefficient
    void normalize() {
        if (num.is_zero()) {
            den = LaurentPoly::one();
            return;
        }
        Monomial shift;
        for (const auto& v : den.vars()) {
            auto [lo, hi] = den.exp_range(v);
            if (lo != 0) shift[v] = -lo;
        }
        if (!shift.empty()) {
            den = den.mul_monomial(Rat(1), shift);
            num = num.mul_monomial(Rat(1), shift);
        }
        Rat c = den.content();
        if (den.leading_coeff() < 0) c = -c;
        if (c != 1) {
            den = den.scaled(Rat(1) / c);
            num = num.scaled(Rat(1) / c);
        }
    }
};

inline RationalFunction rf_qh(int e = 1) { return RationalFunction::var(VarId::qh(), e); }

// q = qh^2 throughout; q is never a primitive variable.
inline RationalFunction rf_q(int e = 1) { return RationalFunction::var(VarId::qh(), 2 * e); }

// Evaluate a polynomial at rational-function values. Variables absent from the
// map stay themselves. Exponents may be negative; a zero base then throws.
inline RationalFunction poly_eval(const LaurentPoly& p,
                                  const std::map<VarId, RationalFunction>& at) {
    RationalFunction acc;
    for (const auto& [m, c] : p.terms) {
        RationalFunction term{c};
        Monomial untouched;
        for (const auto& [v, e] : m) {
            auto it = at.find(v);
            if (it == at.end()) {
                untouched[v] = e;
                continue;
            }
            if (it->second.is_zero() && e < 0)
                throw Error(errc::substitute_pole, "negative power of zero under substitution");
            term *= it->second.pow(e);
        }
        if (!untouched.empty())
            term *= RationalFunction(LaurentPoly::monomial(Rat(1), untouched));
        acc += term;
    }
    return acc;
}

// Substitution into a rational function; throws if the denominator vanishes.
inline RationalFunction substitute(const RationalFunction& f,
                                   const std::map<VarId, RationalFunction>& at) {
    RationalFunction d = poly_eval(f.den, at);
    if (d.is_zero()) throw Error(errc::substitute_pole, "denominator vanishes under substitution");
    return poly_eval(f.num, at) / d;
}

} // namespace kha
