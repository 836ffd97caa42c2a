#pragma once
#include <gmpxx.h>
#include <string>
#include <string_view>

namespace cinv {

using Rational = mpq_class;
using Integer = mpz_class;

// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts "a", "-a", "a/b". Throws std::invalid_argument on bad input.
Rational parse_rational(std::string_view s);

// Decimal rendering with `digits` digits after the point (rounded half away from zero).
std::string to_decimal(const Rational& q, int digits);

Rational rational_pow(const Rational& q, int e);

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace cinv
