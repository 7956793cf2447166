#pragma once

#include <gmpxx.h>

#include <string>

namespace coblab {

/// Exact rational scalar used for every coefficient, norm and bound.
using Rational = mpq_class;

/// Renders as "num/den" (denominator always present, "0/1" for zero).
std::string to_string(const Rational& q);

/// Parses "num/den" or a plain integer.
Rational parse_rational(const std::string& text);

/// 1/n! for n >= 0.
Rational inverse_factorial(int n);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace coblab
