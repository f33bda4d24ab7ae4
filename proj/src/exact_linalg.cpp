#include "spectra/exact_linalg.hpp"

#include <utility>

namespace spectra {

namespace {

void check_symmetric(const QMatrix& a, const char* where) {
  if (!a.is_symmetric()) throw DimensionMismatch(std::string(where) + ": matrix is not symmetric");
}

// Congruence by an elementary column operation col_target += factor * col_source,
// applied to the working matrix M (both sides) and accumulated into S.
void add_multiple(QMatrix& m, QMatrix& s, std::size_t target, std::size_t source, const Rational& factor) {
  const std::size_t n = m.rows();
  for (std::size_t r = 0; r < n; ++r) m(r, target) += factor * m(r, source);
  for (std::size_t c = 0; c < n; ++c) m(target, c) += factor * m(source, c);
  for (std::size_t r = 0; r < n; ++r) s(r, target) += factor * s(r, source);
}

void swap_index(QMatrix& m, QMatrix& s, std::size_t i, std::size_t j) {
  if (i == j) return;
  const std::size_t n = m.rows();
  for (std::size_t r = 0; r < n; ++r) std::swap(m(r, i), m(r, j));
  for (std::size_t c = 0; c < n; ++c) std::swap(m(i, c), m(j, c));
  for (std::size_t r = 0; r < n; ++r) std::swap(s(r, i), s(r, j));
}

}  // namespace

Congruence ldl_congruence(const QMatrix& a) {
  check_symmetric(a, "ldl_congruence");
  const std::size_t n = a.rows();
  QMatrix m = a;
  QMatrix s = QMatrix::identity(n);

  for (std::size_t k = 0; k < n; ++k) {
    // Symmetric pivoting on the first nonzero remaining diagonal, so an
    // already diagonal input keeps S = I.
    std::size_t pivot = n;
    for (std::size_t i = k; i < n; ++i)
      if (m(i, i) != 0) {
        pivot = i;
        break;
      }
    if (pivot == n) {
      // All remaining diagonals vanish; look for an off-diagonal entry.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (m(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;  // remaining block is zero
      // (e_i + e_j)ᵀ M (e_i + e_j) = 2 m_ij != 0.
      add_multiple(m, s, pi, pj, Rational(1));
      pivot = pi;
    }
    swap_index(m, s, k, pivot);
    const Rational p = m(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (m(r, k) == 0) continue;
      Rational factor = -m(r, k) / p;
      add_multiple(m, s, r, k, factor);
    }
  }
  return {std::move(s), std::move(m)};
}

Signature signature(const QMatrix& a) {
  Congruence c = ldl_congruence(a);
  Signature sig;
  for (std::size_t i = 0; i < c.D.rows(); ++i) {
    int sg = sgn(c.D(i, i));
    if (sg > 0) {
      ++sig.n_plus;
    } else if (sg < 0) {
      ++sig.n_minus;
    } else {
      ++sig.n_zero;
    }
  }
  return sig;
}

WeightedRank1Decomposition weighted_rank1(const QMatrix& a) {
  Congruence c = ldl_congruence(a);
  // A = S⁻ᵀ D S⁻¹ = Σ d_k r_k r_kᵀ with r_k the k-th row of S⁻¹.
  QMatrix s_inv = inverse(c.S);
  WeightedRank1Decomposition out;
  for (std::size_t k = 0; k < c.D.rows(); ++k) {
    const Rational& d = c.D(k, k);
    if (d == 0) continue;
    out.terms.push_back({abs(d), sgn(d) > 0 ? 1 : -1, s_inv.row(k)});
  }
  return out;
}

QMatrix reconstruct(const WeightedRank1Decomposition& decomposition, std::size_t dim) {
  QMatrix m(dim, dim);
  for (const auto& t : decomposition.terms) {
    Rational w = t.weight * t.sign;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) += w * t.vector[i] * t.vector[j];
  }
  return m;
}

bool psd_check(const QMatrix& a) { return signature(a).n_minus == 0; }

bool pd_check(const QMatrix& a) { return signature(a).n_plus == a.rows(); }

QMatrix rref(const QMatrix& a, std::vector<std::size_t>* pivots) {
  QMatrix m = a;
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = m.rows();
    for (std::size_t r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

std::size_t rank(const QMatrix& a) {
  std::vector<std::size_t> piv;
  rref(a, &piv);
  return piv.size();
}

std::vector<QVector> image_basis(const QMatrix& a) {
  if (!psd_check(a)) throw NotPSD("image_basis: matrix is not positive semidefinite");
  std::vector<std::size_t> piv;
  rref(a, &piv);
  std::vector<QVector> basis;
  for (std::size_t c : piv) basis.push_back(a.col(c));
  return basis;
}

std::vector<QVector> kernel_basis(const QMatrix& a) {
  std::vector<std::size_t> piv;
  QMatrix r = rref(a, &piv);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : piv) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(a.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(const QMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  QMatrix m = a;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t sel = n;
    for (std::size_t r = k; r < n; ++r)
      if (m(r, k) != 0) {
        sel = r;
        break;
      }
    if (sel == n) return 0;
    if (sel != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(sel, c), m(k, c));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (m(r, k) == 0) continue;
      Rational f = m(r, k) / m(k, k);
      for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
    }
  }
  return det;
}

QMatrix inverse(const QMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = a.rows();
  QMatrix aug(n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, QMatrix::identity(n));
  std::vector<std::size_t> piv;
  QMatrix r = rref(aug, &piv);
  if (piv.size() < n || piv[n - 1] != n - 1) throw Singular("matrix is singular");
  return r.block(0, n, n, n);
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve: right-hand side length");
  QMatrix aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, a.cols()) = b[i];
  std::vector<std::size_t> piv;
  QMatrix r = rref(aug, &piv);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  QVector x(a.cols(), Rational(0));
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = r(k, a.cols());
  return x;
}

QMatrix columns_to_matrix(const std::vector<QVector>& columns, std::size_t rows) {
  QMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  return m;
}

}  // namespace spectra
