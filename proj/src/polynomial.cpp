#include "spectra/polynomial.hpp"

#include <functional>

#include "spectra/errors.hpp"

namespace spectra {

unsigned degree(const Monomial& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

Monomial operator+(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) throw DimensionMismatch("monomials in different numbers of variables");
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Monomial unit_monomial(std::size_t n, std::size_t i) {
  Monomial m(n, 0);
  m.at(i) = 1;
  return m;
}

std::string monomial_key(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(m[i]);
  }
  return out;
}

Monomial parse_monomial_key(std::string_view key, std::size_t n) {
  Monomial m;
  std::size_t start = 0;
  while (n > 0) {
    const std::size_t comma = key.find(',', start);
    std::string_view part = key.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string_view::npos)
      throw ParseError("bad monomial key '" + std::string(key) + "'");
    m.push_back(static_cast<unsigned>(std::stoul(std::string(part))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (m.size() != n) throw ParseError("monomial key '" + std::string(key) + "' does not have " + std::to_string(n) + " exponents");
  return m;
}

std::vector<Monomial> monomials_up_to(std::size_t n, unsigned d) {
  std::vector<Monomial> out;
  for (unsigned deg = 0; deg <= d; ++deg) {
    Monomial m(n, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
      if (n == 0) {
        if (left == 0) out.push_back(m);
        return;
      }
      if (i + 1 == n) {
        m[i] = left;
        out.push_back(m);
        m[i] = 0;
        return;
      }
      for (unsigned e = left + 1; e-- > 0;) {
        m[i] = e;
        rec(i + 1, left - e);
      }
      m[i] = 0;
    };
    rec(0, deg);
  }
  return out;
}

}  // namespace spectra
