#pragma once

// Virtual K-theory classes: integer combinations of characters (monomials
// in Chern roots x[i,a], framing weights u[i,a], qh and edge weights t[e]).
// Multiplicities live in the class; the characters themselves carry no
// coefficients.

#include <map>
#include <string>

#include "kha/error.hpp"
#include "kha/laurent.hpp"
#include "kha/rational_function.hpp"

namespace kha {

class KClass {
public:
    using TermMap = std::map<Monomial, long, MonoLess>;

    KClass() = default;

    static KClass line(const Monomial& chi) {
        KClass x;
        x.add(chi, 1);
        return x;
    }

    void add(const Monomial& chi, long mult) {
        if (mult == 0) return;
        auto it = terms_.find(chi);
        if (it == terms_.end()) {
            terms_.emplace(chi, mult);
        } else {
            it->second += mult;
            if (it->second == 0) terms_.erase(it);
        }
    }

    KClass& operator+=(const KClass& o) {
        for (const auto& [chi, m] : o.terms_) add(chi, m);
        return *this;
    }
    KClass& operator-=(const KClass& o) {
        for (const auto& [chi, m] : o.terms_) add(chi, -m);
        return *this;
    }
    friend KClass operator+(KClass a, const KClass& b) { a += b; return a; }
    friend KClass operator-(KClass a, const KClass& b) { a -= b; return a; }
    KClass operator-() const {
        KClass x;
        for (const auto& [chi, m] : terms_) x.terms_.emplace(chi, -m);
        return x;
    }

    // Tensor by a single character: every term is multiplied by chi.
    KClass scaled(const Monomial& chi) const {
        KClass x;
        for (const auto& [c, m] : terms_) x.add(mono_mul(c, chi), m);
        return x;
    }

    // Dual class: characters are inverted, multiplicities kept.
    KClass dual() const {
        KClass x;
        for (const auto& [c, m] : terms_) x.add(mono_inverse(c), m);
        return x;
    }

    // Tensor product of classes (bilinear in the characters).
    friend KClass kclass_mul(const KClass& a, const KClass& b) {
        KClass x;
        for (const auto& [ca, ma] : a.terms_)
            for (const auto& [cb, mb] : b.terms_)
                x.add(mono_mul(ca, cb), ma * mb);
        return x;
    }

    long rank() const {
        long r = 0;
        for (const auto& [chi, m] : terms_) r += m;
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    // The class as a Laurent polynomial (its character).
    LaurentPoly character() const {
        LaurentPoly p;
        for (const auto& [chi, m] : terms_) p.add_term(chi, Rat(m));
        return p;
    }

    bool operator==(const KClass& o) const { return terms_ == o.terms_; }

private:
    TermMap terms_;
};

// Exterior algebra series of a virtual class, evaluated at its characters:
//   wedge_star(sum m_chi * chi) = prod (1 - chi)^{m_chi}.
inline RationalFunction wedge_star(const KClass& X) {
    RationalFunction num{1L};
    RationalFunction den{1L};
    for (const auto& [chi, m] : X.terms()) {
        LaurentPoly f;
        f.add_term({}, Rat(1));
        f.add_term(chi, Rat(-1));
        RationalFunction lin{f};
        if (m > 0) {
            num = num * lin.pow(m);
        } else {
            den = den * lin.pow(-m);
        }
    }
    return num / den;
}

// wedge_series(X, z) = wedge_star(X / z): each positive character chi of X
// contributes a factor (1 - chi/z), negative multiplicities divide.
inline RationalFunction wedge_series(const KClass& X, const VarId& z) {
    Monomial zinv{{z, -1}};
    return wedge_star(X.scaled(zinv));
}

// Determinant-of-the-dual invariant: on a line chi it is -chi, and it is
// extended multiplicatively, so on a virtual class of rank r it equals
// (-1)^r times the product of the characters (with multiplicity).
struct SdetValue {
    int sign = 1;         // (-1)^rank
    Monomial monomial;    // product of characters

    RationalFunction to_rational() const {
        LaurentPoly p;
        p.add_term(monomial, Rat(sign));
        return RationalFunction{p};
    }
};

inline SdetValue sdet(const KClass& X) {
    SdetValue v;
    Monomial prod;
    long rank = 0;
    for (const auto& [chi, m] : X.terms()) {
        prod = mono_mul(prod, mono_pow(chi, static_cast<int>(m)));
        rank += m;
    }
    v.monomial = prod;
    v.sign = (((rank % 2) + 2) % 2 == 0) ? 1 : -1;
    return v;
}

}  // namespace kha
