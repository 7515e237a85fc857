#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "moduli/errors.hpp"

namespace moduli {

// Exact arithmetic everywhere the math is exact; doubles appear only in the
// gluing module. cpp_rational keeps num/den reduced with den > 0 by
// construction, which is exactly the invariant we want.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Int& v) { return v.str(); }

// "p/q", or just "p" when q == 1. Never floats.
inline std::string to_string(const Rational& v)
{
    const Int num = boost::multiprecision::numerator(v);
    const Int den = boost::multiprecision::denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Int int_pow(Int base, unsigned exp)
{
    Int out = 1;
    while (exp) {
        if (exp & 1u) out *= base;
        base *= base;
        exp >>= 1;
    }
    return out;
}

// base^exp for possibly negative exp; base must be nonzero when exp < 0.
inline Rational rational_pow(const Rational& base, long exp)
{
    if (exp >= 0) {
        Rational out = 1;
        for (long i = 0; i < exp; ++i) out *= base;
        return out;
    }
    if (base == 0) throw DomainError("rational_pow: zero base with negative exponent");
    Rational out = 1;
    for (long i = 0; i < -exp; ++i) out *= base;
    return Rational(1) / out;
}

inline Int factorial(unsigned n)
{
    Int out = 1;
    for (unsigned i = 2; i <= n; ++i) out *= i;
    return out;
}

// Generalized binomial binom(x, k) = x(x-1)...(x-k+1)/k! for integer x of
// either sign; always an integer in that case.
inline Int gen_binom(const Int& x, unsigned k)
{
    Int num = 1;
    for (unsigned i = 0; i < k; ++i) num *= (x - Int(i));
    const Int den = factorial(k);
    Int q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw InternalError("gen_binom: falling factorial not divisible by k!");
    return q;
}

} // namespace moduli
