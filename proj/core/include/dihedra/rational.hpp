#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dihedra {

// Exact angles are stored in units of pi, so every constraint has rational data.
using Rational = mpq_class;

// Parses "p/q" or "p" (optional sign). Throws std::invalid_argument on bad input
// or a zero denominator. The result is canonical.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Least common multiple of the denominators (1 for an empty range).
mpz_class common_denominator(std::span<const Rational> values);

// Nearest rational with the given denominator (ties rounded down).
Rational round_to_denominator(double value, long denominator);

// Canonical p/q. Throws std::invalid_argument when q is 0.
Rational make_rational(long p, long q);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace dihedra
