#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace capcomp {

// Exact rationals back every energy quantity. Thresholds such as ceil(T*B)
// are discontinuous in B, so no floating point is allowed on that path.
using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "p/q" (q > 0), an integer, or a finite decimal with at most 12
// fractional digits. Anything else (exponents, NaN, empty) throws ParseError.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

BigInt ceil(const Rational& value);
BigInt floor(const Rational& value);

// Narrowing helpers; throw DomainError when the value does not fit.
long to_long(const BigInt& value);

double to_double(const Rational& value);

// log2 of a positive arbitrary-precision integer, exact to double rounding
// even when the integer has thousands of bits.
double log2(const BigInt& value);

}  // namespace capcomp
