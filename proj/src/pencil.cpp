#include "spectra/pencil.hpp"

#include "spectra/exact_linalg.hpp"

namespace spectra {

LinearPencil::LinearPencil(std::vector<QMatrix> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw DimensionMismatch("a pencil needs at least one variable");
  d_ = coeffs_.front().rows();
  for (const auto& p : coeffs_) {
    if (p.rows() != d_ || p.cols() != d_) throw DimensionMismatch("pencil coefficients differ in size");
    if (!p.is_symmetric()) throw DimensionMismatch("pencil coefficient is not symmetric");
  }
}

LinearPencil LinearPencil::zero(std::size_t d, std::size_t n) {
  return LinearPencil(std::vector<QMatrix>(n + 1, QMatrix(d, d)));
}

LinearPencil LinearPencil::from_diagonal(const std::vector<AffineFunctional>& entries) {
  if (entries.empty()) throw DimensionMismatch("from_diagonal needs at least one entry");
  const std::size_t n = entries.front().n();
  const std::size_t d = entries.size();
  std::vector<QMatrix> coeffs(n + 1, QMatrix(d, d));
  for (std::size_t k = 0; k < d; ++k) {
    if (entries[k].n() != n) throw DimensionMismatch("diagonal entries in different dimensions");
    coeffs[0](k, k) = entries[k].a0;
    for (std::size_t i = 0; i < n; ++i) coeffs[i + 1](k, k) = entries[k].linear[i];
  }
  return LinearPencil(std::move(coeffs));
}

LinearPencil LinearPencil::scalar(const AffineFunctional& f) { return from_diagonal({f}); }

QMatrix eval_point(const LinearPencil& l, const PencilPoint& x) {
  if (x.size() != l.n()) throw DimensionMismatch("point has " + std::to_string(x.size()) + " coordinates, pencil has " + std::to_string(l.n()) + " variables");
  QMatrix out = l.coeff(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    out += l.coeff(i + 1) * x[i];
  }
  return out;
}

QMatrix eval_tuple(const LinearPencil& l, const MatrixTuple& x) {
  if (x.entries.size() != l.n()) throw DimensionMismatch("tuple length differs from number of variables");
  for (const auto& xi : x.entries) {
    if (xi.rows() != x.m || xi.cols() != x.m) throw DimensionMismatch("tuple entry has wrong size");
    if (!xi.is_symmetric()) throw DimensionMismatch("tuple entry is not symmetric");
  }
  QMatrix out = kron(l.coeff(0), QMatrix::identity(x.m));
  for (std::size_t i = 0; i < x.entries.size(); ++i) out += kron(l.coeff(i + 1), x.entries[i]);
  return out;
}

Eigen::MatrixXd eval_tuple(const LinearPencil& l, const std::vector<Eigen::MatrixXd>& x) {
  if (x.size() != l.n()) throw DimensionMismatch("tuple length differs from number of variables");
  const Eigen::Index m = x.empty() ? 0 : x.front().rows();
  const Eigen::Index d = static_cast<Eigen::Index>(l.d());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d * m, d * m);
  auto add_kron = [&](const QMatrix& p, const Eigen::MatrixXd& xi) {
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) {
        if (p(a, b) == 0) continue;
        out.block(a * m, b * m, m, m) += p(a, b).get_d() * xi;
      }
  };
  add_kron(l.coeff(0), Eigen::MatrixXd::Identity(m, m));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].rows() != m || x[i].cols() != m) throw DimensionMismatch("tuple entry has wrong size");
    add_kron(l.coeff(i + 1), x[i]);
  }
  return out;
}

bool membership(const LinearPencil& l, const PencilPoint& x) { return psd_check(eval_point(l, x)); }

bool membership_tuple(const LinearPencil& l, const MatrixTuple& x) { return psd_check(eval_tuple(l, x)); }

LinearPencil direct_sum(const LinearPencil& a, const LinearPencil& b) {
  if (a.n() != b.n()) throw DimensionMismatch("direct_sum of pencils in different numbers of variables");
  std::vector<QMatrix> coeffs;
  for (std::size_t i = 0; i <= a.n(); ++i) coeffs.push_back(direct_sum(a.coeff(i), b.coeff(i)));
  return LinearPencil(std::move(coeffs));
}

LinearPencil translate(const LinearPencil& l, const PencilPoint& v) {
  std::vector<QMatrix> coeffs = l.coeffs();
  coeffs[0] = eval_point(l, v);
  return LinearPencil(std::move(coeffs));
}

LinearPencil change_variables(const LinearPencil& l, const QMatrix& m) {
  if (m.rows() != l.n() || m.cols() != l.n()) throw DimensionMismatch("change_variables: matrix must be n×n");
  if (determinant(m) == 0) throw Singular("change_variables: matrix is singular");
  std::vector<QMatrix> coeffs(l.n() + 1, QMatrix(l.d(), l.d()));
  coeffs[0] = l.coeff(0);
  for (std::size_t i = 0; i < l.n(); ++i)
    for (std::size_t j = 0; j < l.n(); ++j) {
      if (m(j, i) == 0) continue;
      coeffs[i + 1] += l.coeff(j + 1) * m(j, i);
    }
  return LinearPencil(std::move(coeffs));
}

LinearPencil congruence(const LinearPencil& l, const QMatrix& c) {
  if (c.rows() != l.d()) throw DimensionMismatch("congruence: factor has wrong row count");
  QMatrix ct = c.transpose();
  std::vector<QMatrix> coeffs;
  for (const auto& p : l.coeffs()) coeffs.push_back(ct * p * c);
  return LinearPencil(std::move(coeffs));
}

LinearPencil scale(const LinearPencil& l, const Rational& s) {
  std::vector<QMatrix> coeffs;
  for (const auto& p : l.coeffs()) coeffs.push_back(p * s);
  return LinearPencil(std::move(coeffs));
}

LinearPencil restrict_variables(const LinearPencil& l, std::size_t k) {
  if (k == 0 || k > l.n()) throw DimensionMismatch("restrict_variables: bad variable count");
  return LinearPencil(std::vector<QMatrix>(l.coeffs().begin(), l.coeffs().begin() + static_cast<long>(k) + 1));
}

LinearPencil embed_variables(const LinearPencil& l, std::size_t n) {
  if (n < l.n()) throw DimensionMismatch("embed_variables: fewer variables than the pencil");
  std::vector<QMatrix> coeffs = l.coeffs();
  coeffs.resize(n + 1, QMatrix(l.d(), l.d()));
  return LinearPencil(std::move(coeffs));
}

bool is_diagonal(const LinearPencil& l) {
  for (const auto& p : l.coeffs())
    if (!p.is_diagonal()) return false;
  return true;
}

bool is_monic(const LinearPencil& l) { return l.coeff(0) == QMatrix::identity(l.d()); }

std::vector<AffineFunctional> diag_entries(const LinearPencil& l) {
  if (!is_diagonal(l)) throw NotDiagonal("pencil is not diagonal");
  std::vector<AffineFunctional> out;
  for (std::size_t k = 0; k < l.d(); ++k) {
    AffineFunctional f = AffineFunctional::constant(l.n(), l.coeff(0)(k, k));
    for (std::size_t i = 0; i < l.n(); ++i) f.linear[i] = l.coeff(i + 1)(k, k);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace spectra
