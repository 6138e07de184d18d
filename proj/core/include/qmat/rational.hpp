#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "qmat/errors.hpp"

namespace qmat {

// Arbitrary-precision rational scalar.  mpq_class keeps values canonical
// (reduced, positive denominator) after every operation.
using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_one(const Rational& r) { return r == 1; }

// v^k for any integer k; k < 0 requires v != 0.
inline Rational rational_pow(const Rational& v, long k) {
    if (k < 0 && is_zero(v)) throw DivisionByZero("0 has no negative power");
    Rational base = k < 0 ? Rational(1) / v : v;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1
                            : static_cast<unsigned long>(k);
    Rational acc(1);
    while (e != 0) {
        if (e & 1UL) acc *= base;
        base *= base;
        e >>= 1UL;
    }
    return acc;
}

// gcd over Q: gcd(p1/q1, p2/q2) = gcd(p1,p2) / lcm(q1,q2), always >= 0.
// Used to strip common content from coefficient rows.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
    if (is_zero(a)) return abs(b);
    if (is_zero(b)) return abs(a);
    mpz_class num = gcd(a.get_num(), b.get_num());
    mpz_class den = lcm(a.get_den(), b.get_den());
    Rational out(num, den);
    out.canonicalize();
    return out;
}

inline std::string to_text(const Rational& r) { return r.get_str(); }

// Parses "p", "-p" or "p/r".  Throws Error on malformed input or zero
// denominator.
Rational rational_from_text(const std::string& text);

}  // namespace qmat
