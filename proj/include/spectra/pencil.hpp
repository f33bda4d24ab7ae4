#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "spectra/affine.hpp"
#include "spectra/matrix.hpp"

namespace spectra {

/// Linear matrix pencil L(x) = P0 + Σ_{i=1..n} P_i x_i with exact symmetric
/// d×d coefficients. Immutable; every transform returns a new pencil.
class LinearPencil {
 public:
  /// `coeffs` = [P0, P1, ..., Pn]; throws DimensionMismatch unless all are
  /// symmetric, equally sized, and n ≥ 1.
  explicit LinearPencil(std::vector<QMatrix> coeffs);

  static LinearPencil zero(std::size_t d, std::size_t n);
  /// diag(f_1(x), ..., f_d(x)).
  static LinearPencil from_diagonal(const std::vector<AffineFunctional>& entries);
  /// The 1×1 pencil f(x).
  static LinearPencil scalar(const AffineFunctional& f);

  std::size_t d() const { return d_; }
  std::size_t n() const { return coeffs_.size() - 1; }
  const QMatrix& coeff(std::size_t i) const { return coeffs_.at(i); }
  const std::vector<QMatrix>& coeffs() const { return coeffs_; }

  friend bool operator==(const LinearPencil& a, const LinearPencil& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::size_t d_ = 0;
  std::vector<QMatrix> coeffs_;
};

/// Tuple X = (X_1, ..., X_n) of symmetric m×m matrices.
struct MatrixTuple {
  std::size_t m = 0;
  std::vector<QMatrix> entries;
};

QMatrix eval_point(const LinearPencil& l, const PencilPoint& x);

/// P0 ⊗ I_m + Σ P_i ⊗ X_i.
QMatrix eval_tuple(const LinearPencil& l, const MatrixTuple& x);
Eigen::MatrixXd eval_tuple(const LinearPencil& l, const std::vector<Eigen::MatrixXd>& x);

bool membership(const LinearPencil& l, const PencilPoint& x);
bool membership_tuple(const LinearPencil& l, const MatrixTuple& x);

LinearPencil direct_sum(const LinearPencil& a, const LinearPencil& b);

/// L'(x) = L(x + v).
LinearPencil translate(const LinearPencil& l, const PencilPoint& v);

/// L'(x') = L(M x'); throws Singular when M is not invertible.
LinearPencil change_variables(const LinearPencil& l, const QMatrix& m);

/// Cᵀ L C (C is d×k).
LinearPencil congruence(const LinearPencil& l, const QMatrix& c);

/// s·L.
LinearPencil scale(const LinearPencil& l, const Rational& s);

/// Keeps variables [0, k) and drops the rest (their coefficients discarded).
LinearPencil restrict_variables(const LinearPencil& l, std::size_t k);

/// Same pencil viewed in n ≥ l.n() variables; extra coefficients zero.
LinearPencil embed_variables(const LinearPencil& l, std::size_t n);

bool is_diagonal(const LinearPencil& l);
bool is_monic(const LinearPencil& l);

/// The d affine polynomials on the diagonal; throws NotDiagonal.
std::vector<AffineFunctional> diag_entries(const LinearPencil& l);

}  // namespace spectra
