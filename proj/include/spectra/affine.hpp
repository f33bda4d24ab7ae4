#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "spectra/rational.hpp"

namespace spectra {

/// Exact point of Rⁿ.
using PencilPoint = std::vector<Rational>;

/// a0 + Σ linear[j]·x_j with exact coefficients.
struct AffineFunctional {
  Rational a0;
  std::vector<Rational> linear;

  AffineFunctional() = default;
  AffineFunctional(Rational constant, std::vector<Rational> coefficients)
      : a0(std::move(constant)), linear(std::move(coefficients)) {}

  static AffineFunctional constant(std::size_t n, const Rational& c) {
    return {c, std::vector<Rational>(n, Rational(0))};
  }
  /// The coordinate function x_j.
  static AffineFunctional coordinate(std::size_t n, std::size_t j) {
    AffineFunctional f = constant(n, 0);
    f.linear[j] = 1;
    return f;
  }

  std::size_t n() const { return linear.size(); }

  Rational operator()(const PencilPoint& x) const;

  /// Linear part only (the homogenized functional at a direction).
  Rational slope(const std::vector<Rational>& direction) const;

  bool is_constant() const;

  AffineFunctional& operator+=(const AffineFunctional& o);
  AffineFunctional& operator*=(const Rational& s);
  friend AffineFunctional operator+(AffineFunctional a, const AffineFunctional& b) { return a += b; }
  friend AffineFunctional operator-(AffineFunctional a, const AffineFunctional& b) {
    AffineFunctional nb = b;
    nb *= Rational(-1);
    return a += nb;
  }
  friend AffineFunctional operator*(const Rational& s, AffineFunctional a) { return a *= s; }
  friend bool operator==(const AffineFunctional& a, const AffineFunctional& b) {
    return a.a0 == b.a0 && a.linear == b.linear;
  }

  /// Human readable form such as "1 + 1/3*x1 - x2".
  std::string str() const;
};

std::string point_string(const PencilPoint& x);

/// Inverse of point_string; throws ParseError.
PencilPoint parse_point(std::string_view text);

}  // namespace spectra
