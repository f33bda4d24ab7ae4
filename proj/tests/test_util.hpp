#pragma once

#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "spectra/matrix.hpp"
#include "spectra/pencil.hpp"
#include "spectra/rational.hpp"

namespace spectra::testing {

inline Rational Q(const char* s) { return parse_rational(s); }

inline QMatrix qm(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<Rational>> r;
  for (auto row : rows) {
    std::vector<Rational> v;
    for (const char* s : row) v.push_back(parse_rational(s));
    r.push_back(std::move(v));
  }
  return QMatrix::from_rows(r);
}

inline QMatrix qdiag(std::initializer_list<const char*> entries) {
  std::vector<Rational> v;
  for (const char* s : entries) v.push_back(parse_rational(s));
  return QMatrix::diagonal(v);
}

inline PencilPoint pt(std::initializer_list<const char*> entries) {
  PencilPoint v;
  for (const char* s : entries) v.push_back(parse_rational(s));
  return v;
}

inline AffineFunctional af(std::initializer_list<const char*> coeffs) {
  std::vector<Rational> v;
  for (const char* s : coeffs) v.push_back(parse_rational(s));
  Rational a0 = v.front();
  v.erase(v.begin());
  return {a0, v};
}

/// Seed for fuzz loops; SPECTRA_FARKAS_SEED overrides the default.
inline std::uint32_t fuzz_seed(std::uint32_t fallback) {
  if (const char* env = std::getenv("SPECTRA_FARKAS_SEED")) return static_cast<std::uint32_t>(std::stoul(env));
  return fallback;
}

class Fuzzer {
 public:
  explicit Fuzzer(std::uint32_t seed) : rng_(fuzz_seed(seed)) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// p/q with |p| ≤ max_num, 1 ≤ q ≤ max_den.
  Rational rational(int max_num, int max_den) {
    Rational r(integer(-max_num, max_num), integer(1, max_den));
    r.canonicalize();
    return r;
  }

  QMatrix matrix(std::size_t rows, std::size_t cols, int max_num = 4, int max_den = 3) {
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rational(max_num, max_den);
    return m;
  }

  QMatrix symmetric(std::size_t n, int max_num = 4, int max_den = 3) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rational(max_num, max_den);
    return m;
  }

  /// Symmetric of rank at most r with mixed signs.
  QMatrix low_rank_symmetric(std::size_t n, std::size_t r) {
    QMatrix m(n, n);
    for (std::size_t k = 0; k < r; ++k) {
      QMatrix v = matrix(n, 1, 3, 2);
      Rational w = rational(3, 2);
      m += (v * v.transpose()) * w;
    }
    return m;
  }

  QMatrix psd(std::size_t n, std::size_t r) {
    QMatrix m(n, n);
    for (std::size_t k = 0; k < r; ++k) {
      QMatrix v = matrix(n, 1, 3, 2);
      m += v * v.transpose();
    }
    return m;
  }

  QMatrix invertible(std::size_t n) {
    for (;;) {
      QMatrix m = matrix(n, n, 3, 2);
      if (determinant_nonzero(m)) return m;
    }
  }

  std::mt19937& engine() { return rng_; }

 private:
  static bool determinant_nonzero(const QMatrix& m);
  std::mt19937 rng_;
};

}  // namespace spectra::testing

#include "spectra/exact_linalg.hpp"

inline bool spectra::testing::Fuzzer::determinant_nonzero(const QMatrix& m) { return determinant(m) != 0; }
