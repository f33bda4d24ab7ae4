#include "spectra/affine.hpp"

#include "spectra/errors.hpp"

namespace spectra {

Rational AffineFunctional::operator()(const PencilPoint& x) const {
  if (x.size() != linear.size()) throw DimensionMismatch("affine functional evaluated at point of wrong length");
  Rational v = a0;
  for (std::size_t j = 0; j < x.size(); ++j) v += linear[j] * x[j];
  return v;
}

Rational AffineFunctional::slope(const std::vector<Rational>& direction) const {
  if (direction.size() != linear.size()) throw DimensionMismatch("direction of wrong length");
  Rational v = 0;
  for (std::size_t j = 0; j < direction.size(); ++j) v += linear[j] * direction[j];
  return v;
}

bool AffineFunctional::is_constant() const {
  for (const auto& c : linear)
    if (c != 0) return false;
  return true;
}

AffineFunctional& AffineFunctional::operator+=(const AffineFunctional& o) {
  if (o.linear.size() != linear.size()) throw DimensionMismatch("affine functionals in different dimensions");
  a0 += o.a0;
  for (std::size_t j = 0; j < linear.size(); ++j) linear[j] += o.linear[j];
  return *this;
}

AffineFunctional& AffineFunctional::operator*=(const Rational& s) {
  a0 *= s;
  for (auto& c : linear) c *= s;
  return *this;
}

std::string AffineFunctional::str() const {
  std::string out = to_string(a0);
  for (std::size_t j = 0; j < linear.size(); ++j) {
    if (linear[j] == 0) continue;
    Rational mag = abs(linear[j]);
    out += sgn(linear[j]) < 0 ? " - " : " + ";
    if (mag != 1) out += to_string(mag) + "*";
    out += "x" + std::to_string(j + 1);
  }
  return out;
}

std::string point_string(const PencilPoint& x) {
  std::string out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) out += ",";
    out += to_string(x[j]);
  }
  return out;
}


PencilPoint parse_point(std::string_view text) {
  PencilPoint out;
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace spectra
