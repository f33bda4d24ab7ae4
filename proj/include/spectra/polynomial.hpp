#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spectra/matrix.hpp"
#include "spectra/pencil.hpp"

namespace spectra {

/// Exponent vector of a monomial x^α in n variables.
using Monomial = std::vector<unsigned>;

unsigned degree(const Monomial& m);
Monomial operator+(const Monomial& a, const Monomial& b);
Monomial unit_monomial(std::size_t n, std::size_t i);

/// "e1,e2,...,en"; the constant monomial in zero variables is "".
std::string monomial_key(const Monomial& m);
/// Inverse of monomial_key; throws ParseError.
Monomial parse_monomial_key(std::string_view key, std::size_t n);

/// All monomials of total degree ≤ d, graded, each degree in lexicographically
/// decreasing order (1, x1, x2, x1², x1x2, x2², ...).
std::vector<Monomial> monomials_up_to(std::size_t n, unsigned d);

template <typename T>
T scalar_cast(const Rational& q);
template <>
inline Rational scalar_cast<Rational>(const Rational& q) {
  return q;
}
template <>
inline double scalar_cast<double>(const Rational& q) {
  return q.get_d();
}

/// Scalar polynomial Σ c_α x^α.
template <typename T>
using ScalarPoly = std::map<Monomial, T>;

/// Matrix polynomial Σ C_α x^α with rows×cols coefficients in n variables.
/// Zero coefficients are never stored.
template <typename T>
class MatrixPoly {
 public:
  using Terms = std::map<Monomial, Matrix<T>>;

  MatrixPoly() = default;
  MatrixPoly(std::size_t rows, std::size_t cols, std::size_t n) : rows_(rows), cols_(cols), n_(n) {}

  static MatrixPoly constant(const Matrix<T>& c, std::size_t n) {
    MatrixPoly p(c.rows(), c.cols(), n);
    p.add(Monomial(n, 0), c);
    return p;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, spectra::degree(m));
    return d;
  }

  Matrix<T> coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Matrix<T>(rows_, cols_) : it->second;
  }

  void add(const Monomial& m, const Matrix<T>& c) {
    if (m.size() != n_) throw DimensionMismatch("monomial has " + std::to_string(m.size()) + " variables, expected " + std::to_string(n_));
    if (c.rows() != rows_ || c.cols() != cols_) throw DimensionMismatch("coefficient " + c.shape() + " in a " + shape() + " polynomial");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  MatrixPoly transpose() const {
    MatrixPoly t(cols_, rows_, n_);
    for (const auto& [m, c] : terms_) t.terms_.emplace(m, c.transpose());
    return t;
  }

  MatrixPoly& operator+=(const MatrixPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  MatrixPoly& operator-=(const MatrixPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  MatrixPoly& operator*=(const T& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend MatrixPoly operator+(MatrixPoly a, const MatrixPoly& b) { return a += b; }
  friend MatrixPoly operator-(MatrixPoly a, const MatrixPoly& b) { return a -= b; }
  friend MatrixPoly operator*(MatrixPoly a, const T& s) { return a *= s; }
  friend MatrixPoly operator*(const T& s, MatrixPoly a) { return a *= s; }

  friend MatrixPoly operator*(const MatrixPoly& a, const MatrixPoly& b) {
    if (a.cols_ != b.rows_ || a.n_ != b.n_) throw DimensionMismatch("polynomial product " + a.shape() + " * " + b.shape());
    MatrixPoly out(a.rows_, b.cols_, a.n_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add(ma + mb, ca * cb);
    return out;
  }

  /// Left and right multiplication by constant matrices.
  friend MatrixPoly operator*(const Matrix<T>& l, const MatrixPoly& p) { return constant(l, p.n_) * p; }
  friend MatrixPoly operator*(const MatrixPoly& p, const Matrix<T>& r) { return p * constant(r, p.n_); }

  friend bool operator==(const MatrixPoly& a, const MatrixPoly& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  /// Same polynomial in n' ≥ n variables (new variables appended).
  MatrixPoly embed(std::size_t n) const {
    if (n < n_) throw DimensionMismatch("embed: fewer variables");
    MatrixPoly out(rows_, cols_, n);
    for (const auto& [m, c] : terms_) {
      Monomial e = m;
      e.resize(n, 0);
      out.terms_.emplace(std::move(e), c);
    }
    return out;
  }

  /// Substitutes x_i = Σ_j a(i,j)·y_j + v_i (a is n×n').
  MatrixPoly substitute(const Matrix<T>& a, const std::vector<T>& v) const {
    if (a.rows() != n_ || v.size() != n_) throw DimensionMismatch("substitute: map does not match variable count");
    const std::size_t np = a.cols();
    std::vector<ScalarPoly<T>> images(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (v[i] != 0) images[i][Monomial(np, 0)] = v[i];
      for (std::size_t j = 0; j < np; ++j)
        if (a(i, j) != 0) images[i][unit_monomial(np, j)] = a(i, j);
    }
    // powers[i][k] = images[i]^k, built on demand.
    std::vector<std::vector<ScalarPoly<T>>> powers(n_, std::vector<ScalarPoly<T>>{ScalarPoly<T>{{Monomial(np, 0), T(1)}}});
    auto power = [&](std::size_t i, unsigned k) -> const ScalarPoly<T>& {
      while (powers[i].size() <= k) powers[i].push_back(multiply(powers[i].back(), images[i]));
      return powers[i][k];
    };
    MatrixPoly out(rows_, cols_, np);
    for (const auto& [m, c] : terms_) {
      ScalarPoly<T> s{{Monomial(np, 0), T(1)}};
      for (std::size_t i = 0; i < n_; ++i)
        if (m[i]) s = multiply(s, power(i, m[i]));
      for (const auto& [sm, sc] : s) out.add(sm, c * sc);
    }
    return out;
  }

  template <typename U, typename F>
  MatrixPoly<U> map_scalars(F f) const {
    MatrixPoly<U> out(rows_, cols_, n_);
    for (const auto& [m, c] : terms_) {
      Matrix<U> cu(c.rows(), c.cols());
      for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) cu(i, j) = f(c(i, j));
      out.add(m, cu);
    }
    return out;
  }

 private:
  static ScalarPoly<T> multiply(const ScalarPoly<T>& a, const ScalarPoly<T>& b) {
    ScalarPoly<T> out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        T prod = ca * cb;
        auto [it, inserted] = out.emplace(ma + mb, prod);
        if (!inserted) it->second += prod;
      }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
  }

  void check_compatible(const MatrixPoly& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || n_ != o.n_) throw DimensionMismatch("polynomial shapes " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t n_ = 0;
  Terms terms_;
};

using QMatrixPoly = MatrixPoly<Rational>;
using DMatrixPoly = MatrixPoly<double>;

/// P0 + Σ P_i x_i as a matrix polynomial.
template <typename T>
MatrixPoly<T> pencil_poly(const LinearPencil& l) {
  MatrixPoly<T> p(l.d(), l.d(), l.n());
  for (std::size_t i = 0; i <= l.n(); ++i) {
    Matrix<T> c(l.d(), l.d());
    for (std::size_t a = 0; a < l.d(); ++a)
      for (std::size_t b = 0; b < l.d(); ++b) c(a, b) = scalar_cast<T>(l.coeff(i)(a, b));
    p.add(i == 0 ? Monomial(l.n(), 0) : unit_monomial(l.n(), i - 1), c);
  }
  return p;
}

inline DMatrixPoly to_numeric(const QMatrixPoly& p) {
  return p.map_scalars<double>([](const Rational& q) { return q.get_d(); });
}

}  // namespace spectra
