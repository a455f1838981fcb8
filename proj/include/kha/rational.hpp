#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "kha/error.hpp"

namespace kha {

// Exact coefficient ring: arbitrary-precision rationals.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw Error(errc::division_by_zero, "0 raised to a negative power");
        return Rat(0);
    }
    Rat b = base;
    unsigned long n;
    if (e < 0) {
        b = Rat(1) / b;
        n = static_cast<unsigned long>(-e);
    } else {
        n = static_cast<unsigned long>(e);
    }
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

inline std::string rat_str(const Rat& r) { return r.str(); }

} // namespace kha
