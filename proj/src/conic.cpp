#include "spectra/conic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double block_min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

Eigen::VectorXd svec(const Eigen::MatrixXd& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  Eigen::VectorXd v(static_cast<Eigen::Index>(svec_size(n)));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j) v(k++) = i == j ? m(i, i) : kSqrt2 * 0.5 * (m(i, j) + m(j, i));
  return v;
}

Eigen::MatrixXd smat(const Eigen::VectorXd& v, std::size_t n) {
  if (static_cast<std::size_t>(v.size()) != svec_size(n)) throw DimensionMismatch("smat: vector length");
  Eigen::MatrixXd m(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i)
    for (Eigen::Index j = i; j < static_cast<Eigen::Index>(n); ++j) {
      const double x = i == j ? v(k) : v(k) / kSqrt2;
      m(i, j) = m(j, i) = x;
      ++k;
    }
  return m;
}

std::size_t ConeLayout::dim() const {
  std::size_t d = free;
  for (std::size_t b : blocks) d += svec_size(b);
  return d;
}

std::size_t ConeLayout::offset(std::size_t block) const {
  std::size_t o = 0;
  for (std::size_t i = 0; i < block; ++i) o += svec_size(blocks.at(i));
  return o;
}

Eigen::VectorXd AffineSubspace::project(const Eigen::VectorXd& z) const {
  const Eigen::VectorXd r = z - point;
  if (basis.cols() == 0) return complement ? z : point;
  const Eigen::VectorXd along = basis * (basis.transpose() * r);
  return complement ? Eigen::VectorXd(z - along) : Eigen::VectorXd(point + along);
}

AffineSubspace AffineSubspace::from_equations(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, bool* consistent) {
  AffineSubspace s;
  s.complement = true;
  const Eigen::Index dim = a.cols();
  if (a.rows() == 0) {
    s.point = Eigen::VectorXd::Zero(dim);
    s.basis = Eigen::MatrixXd(dim, 0);
    if (consistent) *consistent = true;
    return s;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a.transpose());
  qr.setThreshold(1e-11);
  const Eigen::Index r = qr.rank();
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, r);
  s.basis = q;
  if (r == 0) {
    s.point = Eigen::VectorXd::Zero(dim);
  } else {
    Eigen::MatrixXd au = a * q;
    Eigen::VectorXd t = au.colPivHouseholderQr().solve(b);
    s.point = q * t;
  }
  if (consistent) *consistent = (a * s.point - b).norm() <= 1e-9 * (1.0 + b.norm());
  return s;
}

AffineSubspace AffineSubspace::from_parametrization(const Eigen::VectorXd& z0, const Eigen::MatrixXd& v) {
  AffineSubspace s;
  s.point = z0;
  if (v.cols() == 0) {
    s.basis = Eigen::MatrixXd(z0.size(), 0);
    return s;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
  qr.setThreshold(1e-11);
  s.basis = qr.householderQ() * Eigen::MatrixXd::Identity(v.rows(), qr.rank());
  return s;
}

Eigen::VectorXd project_cone(const ConeLayout& layout, const Eigen::VectorXd& z, double margin) {
  Eigen::VectorXd out = z;
  std::size_t o = 0;
  for (std::size_t n : layout.blocks) {
    const std::size_t len = svec_size(n);
    Eigen::MatrixXd m = smat(z.segment(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(len)), n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(margin);
    m = es.eigenvectors() * lambda.asDiagonal() * es.eigenvectors().transpose();
    out.segment(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(len)) = svec(m);
    o += len;
  }
  return out;
}

double cone_min_eigenvalue(const ConeLayout& layout, const Eigen::VectorXd& z) {
  double worst = std::numeric_limits<double>::infinity();
  std::size_t o = 0;
  for (std::size_t n : layout.blocks) {
    const std::size_t len = svec_size(n);
    worst = std::min(worst, block_min_eigenvalue(smat(z.segment(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(len)), n)));
    o += len;
  }
  return worst;
}

DykstraResult dykstra(const ConeLayout& layout, const AffineSubspace& affine, const DykstraOptions& options) {
  if (static_cast<std::size_t>(affine.point.size()) != layout.dim()) throw DimensionMismatch("dykstra: affine set and cone differ in dimension");
  DykstraResult r;
  Eigen::VectorXd x = affine.project(Eigen::VectorXd::Zero(affine.point.size()));
  Eigen::VectorXd p = Eigen::VectorXd::Zero(x.size());
  double window_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0;; ++k) {
    r.iterations = k;
    r.x = x;
    r.min_eigenvalue = cone_min_eigenvalue(layout, x);
    if (r.min_eigenvalue >= -options.psd_tol) {
      r.status = DykstraStatus::Feasible;
      return r;
    }
    if (k >= options.max_iterations) {
      r.status = DykstraStatus::MaxIterations;
      return r;
    }
    const Eigen::VectorXd y = project_cone(layout, x + p, options.margin);
    p = x + p - y;
    x = affine.project(y);
    r.gap = (x - y).norm();
    if (options.stall_window && (k + 1) % options.stall_window == 0) {
      if (r.gap > options.stall_ratio * window_gap) {
        r.x = x;
        r.iterations = k + 1;
        r.min_eigenvalue = cone_min_eigenvalue(layout, x);
        r.status = r.min_eigenvalue >= -options.psd_tol ? DykstraStatus::Feasible : DykstraStatus::Stalled;
        return r;
      }
      window_gap = r.gap;
    }
  }
}

namespace {

/// Largest α ≤ 1 with M + α·dM ⪰ 0 (scaled by 0.95), M positive definite.
double step_length(const Eigen::MatrixXd& m, const Eigen::MatrixXd& dm) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return 0.0;
  const Eigen::MatrixXd l = llt.matrixL();
  const Eigen::MatrixXd li = l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  const Eigen::MatrixXd s = li * dm * li.transpose();
  const double lmin = block_min_eigenvalue(0.5 * (s + s.transpose()));
  if (lmin >= 0) return 1.0;
  return std::min(1.0, 0.95 / -lmin);
}

Eigen::MatrixXd sym(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

InteriorPointResult interior_point(const ConeLayout& layout, const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                   const InteriorPointOptions& options) {
  if (layout.free != 0) throw DimensionMismatch("interior_point: free coordinates are not supported");
  if (static_cast<std::size_t>(a.cols()) != layout.dim() || a.rows() != b.size()) throw DimensionMismatch("interior_point: data shape");
  const std::size_t nb = layout.blocks.size();
  const Eigen::Index m = a.rows();
  std::vector<std::vector<Eigen::MatrixXd>> ab(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i)
    for (std::size_t k = 0; k < nb; ++k) {
      const std::size_t n = layout.blocks[k];
      ab[static_cast<std::size_t>(i)].push_back(
          smat(a.row(i).segment(static_cast<Eigen::Index>(layout.offset(k)), static_cast<Eigen::Index>(svec_size(n))).transpose(), n));
    }
  std::size_t total = 0;
  for (std::size_t n : layout.blocks) total += n;
  const double scale = std::max(1.0, b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
  std::vector<Eigen::MatrixXd> x, z;
  for (std::size_t n : layout.blocks) {
    x.push_back(scale * Eigen::MatrixXd::Identity(n, n));
    z.push_back(Eigen::MatrixXd::Identity(n, n));
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  auto pack = [&](const std::vector<Eigen::MatrixXd>& blocks) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(layout.dim()));
    for (std::size_t k = 0; k < nb; ++k)
      v.segment(static_cast<Eigen::Index>(layout.offset(k)), static_cast<Eigen::Index>(svec_size(layout.blocks[k]))) = svec(blocks[k]);
    return v;
  };
  auto adjoint = [&](const Eigen::VectorXd& v, std::size_t k) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(layout.blocks[k]), static_cast<Eigen::Index>(layout.blocks[k]));
    for (Eigen::Index i = 0; i < m; ++i) s += v(i) * ab[static_cast<std::size_t>(i)][k];
    return s;
  };
  InteriorPointResult r;
  double sigma = 0.3;
  for (std::size_t it = 0;; ++it) {
    r.iterations = it;
    const Eigen::VectorXd xv = pack(x);
    const Eigen::VectorXd rp = b - a * xv;
    double gap = 0.0;
    for (std::size_t k = 0; k < nb; ++k) gap += (x[k].cwiseProduct(z[k])).sum();
    r.mu = total ? gap / static_cast<double>(total) : 0.0;
    r.primal_residual = rp.size() ? rp.cwiseAbs().maxCoeff() / scale : 0.0;
    r.x = xv;
    if (r.primal_residual <= options.tol && r.mu <= options.tol * scale) {
      r.converged = true;
      return r;
    }
    if (it >= options.max_iterations) return r;
    std::vector<Eigen::MatrixXd> zinv(nb), rd(nb), base(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      zinv[k] = sym(z[k].llt().solve(Eigen::MatrixXd::Identity(z[k].rows(), z[k].cols())));
      rd[k] = Eigen::MatrixXd::Identity(x[k].rows(), x[k].cols()) - z[k] - adjoint(y, k);
      base[k] = sigma * r.mu * zinv[k] - x[k] - x[k] * rd[k] * zinv[k];
    }
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd rhs = rp;
    for (Eigen::Index j = 0; j < m; ++j)
      for (std::size_t k = 0; k < nb; ++k) {
        const Eigen::MatrixXd w = x[k] * ab[static_cast<std::size_t>(j)][k] * zinv[k];
        for (Eigen::Index i = 0; i < m; ++i) schur(i, j) += ab[static_cast<std::size_t>(i)][k].cwiseProduct(w).sum();
      }
    for (Eigen::Index i = 0; i < m; ++i)
      for (std::size_t k = 0; k < nb; ++k) rhs(i) -= ab[static_cast<std::size_t>(i)][k].cwiseProduct(base[k]).sum();
    const Eigen::VectorXd dy = sym(schur).completeOrthogonalDecomposition().solve(rhs);
    double ap = 1.0, ad = 1.0;
    std::vector<Eigen::MatrixXd> dx(nb), dz(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      dz[k] = rd[k] - adjoint(dy, k);
      dx[k] = sym(sigma * r.mu * zinv[k] - x[k] - x[k] * dz[k] * zinv[k]);
      ap = std::min(ap, step_length(x[k], dx[k]));
      ad = std::min(ad, step_length(z[k], dz[k]));
    }
    if (ap <= 0 || ad <= 0) return r;
    for (std::size_t k = 0; k < nb; ++k) {
      x[k] = sym(x[k] + ap * dx[k]);
      z[k] = sym(z[k] + ad * dz[k]);
    }
    y += ad * dy;
    const double step = std::min(ap, ad);
    sigma = std::clamp((1.0 - step) * (1.0 - step), 0.05, 0.5);
  }
}

}  // namespace spectra
