#pragma once

#include <gmpxx.h>

#include <cstdio>
#include <stdexcept>
#include <string>

namespace moser {

// Exact rational scalar. mpq_class keeps values canonical (reduced fraction,
// positive denominator), so equality of values is equality of representations.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Every finite double is a dyadic rational; the conversion is exact.
inline Rational rational_from_double(double x) { return Rational(x); }

// Parses "num" or "num/den" (optional sign, arbitrary precision).
inline Rational parse_rational(const std::string& s) {
    mpq_class r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: '" + s + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Fixed 12-digit decimal rendering, used next to the exact value in reports.
inline std::string format_decimal12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", x);
    return buf;
}

inline std::string format_decimal12(const Rational& r) {
    return format_decimal12(r.get_d());
}

}  // namespace moser
