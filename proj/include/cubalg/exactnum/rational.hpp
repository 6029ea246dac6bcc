#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace cubalg {

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p", "-p" or "p/q"; throws Error(Syntax) on malformed text.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Exact square root when q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

/// Nearest rational with denominator at most max_den to a double (Stern-Brocot walk).
Rational approximate(double value, long max_den);

}  // namespace cubalg
