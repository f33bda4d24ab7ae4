#pragma once

#include <Eigen/Dense>

#include "spectra/matrix.hpp"

namespace spectra {

/// Invertible S with Sᵀ·P0·S and Sᵀ·P1·S both diagonal (off-diagonal ≤ tol).
struct SimultaneousDiagonalization {
  Eigen::MatrixXd S;
  double off_diagonal_residual = 0.0;  // max over both conjugated matrices
  double condition_estimate = 0.0;     // σ_max / σ_min of S
};

/// PSD pair simultaneous diagonalization by congruence. Both matrices are
/// checked exactly for positive semidefiniteness first (NotPSD otherwise).
/// Restricts to the image of P0 + P1, normalizes that sum to the identity and
/// orthogonally diagonalizes the transformed P0; the kernel of P0 + P1 is
/// common to both and completes S.
SimultaneousDiagonalization simultaneous_diag_psd(const QMatrix& p0, const QMatrix& p1, double tol = 1e-9);

/// Same, on approximate input (PSD within `psd_tol`).
SimultaneousDiagonalization simultaneous_diag_psd(const Eigen::MatrixXd& p0, const Eigen::MatrixXd& p1,
                                                  double tol = 1e-9, double psd_tol = 1e-10);

/// Symmetric B with BᵀB ≈ A.
Eigen::MatrixXd approx_psd_sqrt(const QMatrix& a);

double min_eigenvalue(const Eigen::MatrixXd& a);

/// Largest |m_ij| over i != j.
double max_off_diagonal(const Eigen::MatrixXd& m);

}  // namespace spectra
