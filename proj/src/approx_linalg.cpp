#include "spectra/approx_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "spectra/exact_linalg.hpp"

namespace spectra {

double max_off_diagonal(const Eigen::MatrixXd& m) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

double min_eigenvalue(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

namespace {

SimultaneousDiagonalization diagonalize_pair(const Eigen::MatrixXd& p0, const Eigen::MatrixXd& p1, double tol) {
  const Eigen::Index n = p0.rows();
  const double scale = n == 0 ? 1.0 : 1.0 + std::max(p0.cwiseAbs().maxCoeff(), p1.cwiseAbs().maxCoeff());

  SimultaneousDiagonalization out;
  if (n == 0) {
    out.S = Eigen::MatrixXd(0, 0);
    return out;
  }

  Eigen::MatrixXd sum = 0.5 * ((p0 + p1) + (p0 + p1).transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sum);
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const Eigen::MatrixXd& u = es.eigenvectors();
  const double cutoff = 1e-12 * scale * static_cast<double>(n);

  std::vector<Eigen::Index> live, dead;
  for (Eigen::Index k = 0; k < n; ++k) (lambda(k) > cutoff ? live : dead).push_back(k);

  // W maps onto the image with Wᵀ (P0 + P1) W = I.
  Eigen::MatrixXd w(n, static_cast<Eigen::Index>(live.size()));
  for (std::size_t c = 0; c < live.size(); ++c) w.col(c) = u.col(live[c]) / std::sqrt(lambda(live[c]));

  Eigen::MatrixXd s(n, n);
  if (!live.empty()) {
    Eigen::MatrixXd a = w.transpose() * p0 * w;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> inner(0.5 * (a + a.transpose()));
    s.leftCols(live.size()) = w * inner.eigenvectors();
  }
  for (std::size_t c = 0; c < dead.size(); ++c) s.col(live.size() + c) = u.col(dead[c]);

  out.S = s;
  out.off_diagonal_residual =
      std::max(max_off_diagonal(s.transpose() * p0 * s), max_off_diagonal(s.transpose() * p1 * s));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
  const auto& sv = svd.singularValues();
  out.condition_estimate = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (out.off_diagonal_residual > tol * scale) {
    throw Error("simultaneous_diag_psd: off-diagonal residual above tolerance");
  }
  return out;
}

}  // namespace

SimultaneousDiagonalization simultaneous_diag_psd(const Eigen::MatrixXd& p0, const Eigen::MatrixXd& p1,
                                                  double tol, double psd_tol) {
  if (p0.rows() != p1.rows() || p0.rows() != p0.cols() || p1.rows() != p1.cols()) {
    throw DimensionMismatch("simultaneous_diag_psd: shapes differ");
  }
  const double scale = p0.rows() == 0 ? 1.0 : 1.0 + std::max(p0.cwiseAbs().maxCoeff(), p1.cwiseAbs().maxCoeff());
  if (p0.rows() > 0 && (min_eigenvalue(p0) < -psd_tol * scale || min_eigenvalue(p1) < -psd_tol * scale)) {
    throw NotPSD("simultaneous_diag_psd: input is not positive semidefinite");
  }
  return diagonalize_pair(p0, p1, tol);
}

SimultaneousDiagonalization simultaneous_diag_psd(const QMatrix& p0, const QMatrix& p1, double tol) {
  if (!psd_check(p0) || !psd_check(p1)) {
    throw NotPSD("simultaneous_diag_psd: input is not positive semidefinite");
  }
  if (p0.rows() != p1.rows()) throw DimensionMismatch("simultaneous_diag_psd: shapes differ");
  return diagonalize_pair(to_eigen(p0), to_eigen(p1), tol);
}

Eigen::MatrixXd approx_psd_sqrt(const QMatrix& a) {
  if (!psd_check(a)) throw NotPSD("approx_psd_sqrt: matrix is not positive semidefinite");
  Eigen::MatrixXd e = to_eigen(a);
  if (e.rows() == 0) return e;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e);
  Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace spectra
