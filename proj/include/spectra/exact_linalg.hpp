#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "spectra/matrix.hpp"

namespace spectra {

/// Inertia of a symmetric matrix.
struct Signature {
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  std::size_t n_zero = 0;

  std::size_t dim() const { return n_plus + n_minus + n_zero; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Result of a congruence diagonalization: transpose(S) * A * S == D.
struct Congruence {
  QMatrix S;
  QMatrix D;
};

struct Rank1Term {
  Rational weight;  // > 0
  int sign = 1;     // +1 or -1
  QVector vector;
};

/// A == Σ sign·weight·v·vᵀ exactly.
struct WeightedRank1Decomposition {
  std::vector<Rank1Term> terms;
};

/// Symmetric LDLᵀ-style congruence with complete diagonal pivoting. A zero
/// remaining diagonal with a nonzero off-diagonal entry is first made a pivot
/// by adding column/row j to i, so D is always genuinely diagonal.
Congruence ldl_congruence(const QMatrix& a);

Signature signature(const QMatrix& a);

WeightedRank1Decomposition weighted_rank1(const QMatrix& a);

/// Σ sign·w·v·vᵀ as a matrix.
QMatrix reconstruct(const WeightedRank1Decomposition& decomposition, std::size_t dim);

bool psd_check(const QMatrix& a);
bool pd_check(const QMatrix& a);

/// Columns of A spanning its column space (exact), count == rank(A).
/// Throws NotPSD when A is not positive semidefinite.
std::vector<QVector> image_basis(const QMatrix& a);

/// Basis of { v : A v = 0 } (any shape of A).
std::vector<QVector> kernel_basis(const QMatrix& a);

std::size_t rank(const QMatrix& a);

Rational determinant(const QMatrix& a);

/// Throws Singular when A is not invertible.
QMatrix inverse(const QMatrix& a);

/// Some solution of A x = b (free variables set to zero), or nullopt when the
/// system is inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

/// Reduced row echelon form; `pivots` receives the pivot column of each
/// nonzero row.
QMatrix rref(const QMatrix& a, std::vector<std::size_t>* pivots = nullptr);

/// Matrix with the given vectors as columns.
QMatrix columns_to_matrix(const std::vector<QVector>& columns, std::size_t rows);

}  // namespace spectra
