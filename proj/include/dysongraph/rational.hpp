#pragma once

// Exact rational arithmetic used throughout the algebraic core.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace dysongraph {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p", or "-p/q". Throws ParseError on malformed input or q == 0.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when the denominator is 1).
std::string to_string(const Rational& value);

Rational rational_pow(const Rational& base, long exponent);

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace dysongraph
