#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace kummerconst {

// GMP keeps mpq_class canonical (gcd(num, den) = 1, den > 0) after every
// arithmetic operation, which is exactly the Rational invariant we need.
using Integer = mpz_class;
using Rational = mpq_class;

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Always "num/den", even for integers. Used by the JSON wire format.
std::string to_fraction_string(const Rational& q);

/// Parses "n", "n/d", "1.25", "-3e-8", "2.5E+3" exactly. Throws SpecError.
Rational parse_rational(std::string_view text);

/// Integer power with a non-negative exponent.
Integer ipow(const Integer& base, unsigned long exp);
Rational ipow(const Rational& base, unsigned long exp);

/// Largest v with p^v | n (n != 0).
unsigned valuation(const Integer& n, const Integer& p);
unsigned valuation(std::int64_t n, std::int64_t p);

/// Decimal expansion of q truncated toward zero after `digits` fractional
/// digits. Sign is kept ("-0.33" for -1/3 with 2 digits).
std::string truncated_decimal(const Rational& q, unsigned digits);

/// Decimal rounded to nearest (ties away from zero) with `digits` fractional
/// digits.
std::string rounded_decimal(const Rational& q, unsigned digits);

/// Approximate double value; only for diagnostics and loose heuristics.
double to_double(const Rational& q);

}  // namespace kummerconst
