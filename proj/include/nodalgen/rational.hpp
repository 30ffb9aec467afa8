#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nodalgen {

using BigInt = mpz_class;
using Rational = mpq_class;

// Lowest terms with positive denominator; throws ParseError on a zero denominator.
Rational make_rational(const BigInt& num, const BigInt& den);

std::string to_string(const BigInt& value);
// "n" when the denominator is one, otherwise "n/d".
std::string to_string(const Rational& value);

BigInt parse_bigint(std::string_view text);
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

} // namespace nodalgen
