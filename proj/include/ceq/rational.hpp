#pragma once

#include "ceq/error.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace ceq {

// All utilities, probabilities and difference values are exact rationals.
// No verdict anywhere in the library goes through floating point.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Builds num/den in canonical form (lowest terms, positive denominator).
/// Throws ParseError if den == 0.
Rational make_rational(const Int& num, const Int& den);

/// Parses "num/den" or a bare integer "num". Accepts non-reduced input and
/// canonicalizes it.
Rational parse_rational(const std::string& text);

/// Renders a rational as "num/den", always with an explicit denominator and
/// in lowest terms ("0/1", "-3/2", ...). This is the wire format used by
/// every JSON file in the project.
std::string to_fraction(const Rational& value);

/// Decimal approximation for human-facing output. Never used in a verdict.
double to_double(const Rational& value);

}  // namespace ceq
