#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace partrans {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "a", "-a", "a/b" or "-a/b" exactly. Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// "0", "3", "-1/2": lowest terms, no spaces.
std::string format_rational(const Rational& q);

/// Representative of q mod 1 in [0, 1).
Rational frac(const Rational& q);

Integer floor_of(const Rational& q);

/// Floor division for machine integers (rounds toward -infinity).
inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long floor_mod(long a, long b) { return a - b * floor_div(a, b); }

}  // namespace partrans
