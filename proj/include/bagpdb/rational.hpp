#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace bagpdb {

/// Exact rational. GMP keeps it canonical (reduced, positive denominator)
/// after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// "num/den" with the denominator always present ("0/1", "3/1").
std::string to_string(const Rational& value);

/// Accepts "n", "n/d" and "-n/d" with decimal digits; throws ParseError.
Rational parse_rational(std::string_view text);

/// Fixed-point rendering with `digits` digits after the point, rounded half
/// away from zero. Display only.
std::string to_decimal(const Rational& value, int digits);

Rational pow(const Rational& base, std::uint64_t exponent);
Integer factorial(std::uint64_t n);
Integer binomial(std::uint64_t n, std::uint64_t k);

/// Falling factorial n (n-1) ... (n-j+1).
Integer falling_factorial(std::uint64_t n, std::uint64_t j);

/// Stirling number of the second kind S(n, k).
Integer stirling2(std::uint64_t n, std::uint64_t k);

/// Exact square root; throws ArithmeticError when `value` is negative or not
/// the square of a rational.
Rational rational_sqrt(const Rational& value);

}  // namespace bagpdb
