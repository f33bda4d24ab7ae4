#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace spectra {

/// Scaled half-vectorization: diagonal entries as is, off-diagonal (i < j)
/// times √2, row-major over the upper triangle. Preserves inner products.
Eigen::VectorXd svec(const Eigen::MatrixXd& m);
Eigen::MatrixXd smat(const Eigen::VectorXd& v, std::size_t n);
inline std::size_t svec_size(std::size_t n) { return n * (n + 1) / 2; }

/// Product of PSD blocks followed by free coordinates, in svec layout.
struct ConeLayout {
  std::vector<std::size_t> blocks;
  std::size_t free = 0;

  std::size_t dim() const;
  std::size_t offset(std::size_t block) const;
};

/// Affine subspace point + span(basis), or point + span(basis)^⊥ when
/// `complement` is set; basis columns orthonormal.
struct AffineSubspace {
  Eigen::VectorXd point;
  Eigen::MatrixXd basis;
  bool complement = false;

  Eigen::VectorXd project(const Eigen::VectorXd& z) const;

  /// { z : A z = b } via a rank-revealing factorization; `consistent`
  /// receives whether b lies (numerically) in the range of A.
  static AffineSubspace from_equations(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, bool* consistent);
  /// { z0 + V t }.
  static AffineSubspace from_parametrization(const Eigen::VectorXd& z0, const Eigen::MatrixXd& v);
};

struct DykstraOptions {
  /// Blocks are projected onto { X ⪰ margin·I }.
  double margin = 0.0;
  std::size_t max_iterations = 20000;
  /// Feasible once every block of the affine iterate has λ_min ≥ −psd_tol.
  double psd_tol = 1e-12;
  /// Stalled when the gap shrinks by less than stall_ratio over a window.
  std::size_t stall_window = 1500;
  double stall_ratio = 0.995;
};

enum class DykstraStatus { Feasible, Stalled, MaxIterations };

struct DykstraResult {
  DykstraStatus status = DykstraStatus::MaxIterations;
  /// Last affine iterate.
  Eigen::VectorXd x;
  std::size_t iterations = 0;
  /// Distance between the last affine and cone iterates.
  double gap = 0.0;
  double min_eigenvalue = 0.0;
};

/// Dykstra's alternating projections between the (shifted) cone and the
/// affine subspace, started at the affine projection of 0.
DykstraResult dykstra(const ConeLayout& layout, const AffineSubspace& affine, const DykstraOptions& options = {});

struct InteriorPointOptions {
  std::size_t max_iterations = 100;
  /// Relative primal residual and complementarity targets.
  double tol = 1e-12;
};

struct InteriorPointResult {
  bool converged = false;
  Eigen::VectorXd x;
  std::size_t iterations = 0;
  double primal_residual = 0.0;
  double mu = 0.0;
};

/// Infeasible-start primal-dual path following (HKM direction) for
/// min tr(X) s.t. A·svec(X) = b, X ⪰ 0 over PSD blocks only. Reaches the
/// boundary solutions that alternating projections approach sublinearly.
InteriorPointResult interior_point(const ConeLayout& layout, const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                   const InteriorPointOptions& options = {});

/// Projection onto the shifted cone.
Eigen::VectorXd project_cone(const ConeLayout& layout, const Eigen::VectorXd& z, double margin);

/// Smallest eigenvalue over all blocks (+∞ without blocks).
double cone_min_eigenvalue(const ConeLayout& layout, const Eigen::VectorXd& z);

}  // namespace spectra
