#pragma once

// Exact arithmetic vocabulary. Every coordinate, mass and box corner in the
// library is an exact rational; doubles appear only when a logarithm is taken.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace carpet {

using Integer = mpz_class;
using Rational = mpq_class;

Integer power(long base, unsigned long exponent);

// num/den in canonical form; den must be nonzero.
Rational make_rational(const Integer& num, const Integer& den);

// base^exponent for any sign of exponent.
Rational power_of(long base, long exponent);

// Natural logarithm of a positive value; accurate for values far outside the
// double range.
double log_of(const Integer& value);
double log_of(const Rational& value);

Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

// Accepts "p/q", "p", or a terminating decimal such as "0.25".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

}  // namespace carpet
