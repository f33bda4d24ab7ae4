#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace spectra {

/// Arbitrary precision rational, always canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Parses "p/q", "p" or a finite decimal such as "-0.75" exactly.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Exact binary value of a finite double.
Rational from_double(double x);

/// Closest fraction with denominator at most `max_denominator`
/// (continued fractions with semiconvergents).
Rational best_rational(double x, std::int64_t max_denominator);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace spectra
