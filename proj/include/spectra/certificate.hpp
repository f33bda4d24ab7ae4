#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "spectra/errors.hpp"
#include "spectra/exact_linalg.hpp"
#include "spectra/pencil.hpp"
#include "spectra/polynomial.hpp"

namespace spectra {

/// w·FᵀF (sos term) or w·Fᵀ L1 F (pencil term).
template <typename T>
struct WeightedFactor {
  T weight;
  MatrixPoly<T> factor;
};

/// Claim: L2 == Σ_sos w·AᵀA + Σ_pencil w·Bᵀ L1 B.
/// sos factors are r×ℓ (any r), pencil factors d×ℓ.
template <typename T>
struct Certificate {
  std::size_t l1_dim = 0;
  std::size_t l2_dim = 0;
  std::size_t n = 0;
  std::vector<WeightedFactor<T>> sos;
  std::vector<WeightedFactor<T>> pencil;
  /// Construction trace, outermost stage first.
  std::vector<std::string> provenance;

  Certificate() = default;
  Certificate(std::size_t d, std::size_t l, std::size_t vars) : l1_dim(d), l2_dim(l), n(vars) {}

  unsigned degree() const {
    unsigned deg = 0;
    for (const auto* terms : {&sos, &pencil})
      for (const auto& t : *terms) deg = std::max(deg, t.factor.degree());
    return deg;
  }

  void add_sos(const T& w, MatrixPoly<T> a) {
    if (a.cols() != l2_dim || a.n() != n) throw DimensionMismatch("sos factor " + a.shape() + " in a certificate for size " + std::to_string(l2_dim));
    if (w == 0 || a.is_zero()) return;
    if (w < 0) throw Error("certificate weights must be non-negative");
    sos.push_back({w, std::move(a)});
  }
  void add_pencil(const T& w, MatrixPoly<T> b) {
    if (b.rows() != l1_dim || b.cols() != l2_dim || b.n() != n)
      throw DimensionMismatch("pencil factor " + b.shape() + " for pencil sizes " + std::to_string(l1_dim) + "/" + std::to_string(l2_dim));
    if (w == 0 || b.is_zero()) return;
    if (w < 0) throw Error("certificate weights must be non-negative");
    pencil.push_back({w, std::move(b)});
  }
  void add_sos(const T& w, const Matrix<T>& a) { add_sos(w, MatrixPoly<T>::constant(a, n)); }
  void add_pencil(const T& w, const Matrix<T>& b) { add_pencil(w, MatrixPoly<T>::constant(b, n)); }

  /// Appends every term of `o` (same shapes).
  void append(const Certificate& o) {
    if (o.l1_dim != l1_dim || o.l2_dim != l2_dim || o.n != n) throw DimensionMismatch("append: certificate shapes differ");
    sos.insert(sos.end(), o.sos.begin(), o.sos.end());
    pencil.insert(pencil.end(), o.pencil.begin(), o.pencil.end());
  }
};

using ExactCertificate = Certificate<Rational>;
using NumericCertificate = Certificate<double>;

enum class VerifyMode { Exact, Numeric };

struct MonomialResidual {
  Monomial monomial;
  double residual = 0;
};

struct VerificationReport {
  VerifyMode mode = VerifyMode::Exact;
  bool pass = false;
  /// Max-norm over all coefficient matrices of (RHS − L2).
  double residual = 0;
  std::vector<MonomialResidual> per_monomial;
};

inline constexpr double kDefaultVerifyTolerance = 1e-8;

/// Σ w AᵀA + Σ w Bᵀ L1 B.
template <typename T>
MatrixPoly<T> expand(const Certificate<T>& cert, const LinearPencil& l1) {
  if (l1.d() != cert.l1_dim || l1.n() != cert.n) throw DimensionMismatch("certificate does not match L1");
  MatrixPoly<T> out(cert.l2_dim, cert.l2_dim, cert.n);
  for (const auto& t : cert.sos) out += (t.factor.transpose() * t.factor) * t.weight;
  const MatrixPoly<T> l = pencil_poly<T>(l1);
  for (const auto& t : cert.pencil) out += (t.factor.transpose() * l * t.factor) * t.weight;
  return out;
}

VerificationReport verify(const LinearPencil& l1, const LinearPencil& l2, const ExactCertificate& cert);
VerificationReport verify(const LinearPencil& l1, const LinearPencil& l2, const NumericCertificate& cert,
                          double tol = kDefaultVerifyTolerance);

/// Certificate of L2 over L1 from one of L2 over M (outer) and one of M over
/// L1 (inner).
template <typename T>
Certificate<T> compose(const Certificate<T>& outer, const Certificate<T>& inner) {
  if (outer.l1_dim != inner.l2_dim || outer.n != inner.n) throw DimensionMismatch("compose: certificate chain does not match");
  Certificate<T> out(inner.l1_dim, outer.l2_dim, outer.n);
  for (const auto& t : outer.sos) out.add_sos(t.weight, t.factor);
  for (const auto& o : outer.pencil) {
    for (const auto& i : inner.sos) out.add_sos(o.weight * i.weight, i.factor * o.factor);
    for (const auto& i : inner.pencil) out.add_pencil(o.weight * i.weight, i.factor * o.factor);
  }
  out.provenance = outer.provenance;
  out.provenance.insert(out.provenance.end(), inner.provenance.begin(), inner.provenance.end());
  return out;
}

/// Certificate in x from one in x' where x = M·x' + v, i.e. x' = M⁻¹(x − v).
ExactCertificate pull_back(const ExactCertificate& cert, const QMatrix& m, const PencilPoint& v);

/// Substitutes x = a·y + v (a is n×n') into every factor.
template <typename T>
Certificate<T> substitute(const Certificate<T>& cert, const Matrix<T>& a, const std::vector<T>& v) {
  Certificate<T> out(cert.l1_dim, cert.l2_dim, a.cols());
  for (const auto& t : cert.sos) out.add_sos(t.weight, t.factor.substitute(a, v));
  for (const auto& t : cert.pencil) out.add_pencil(t.weight, t.factor.substitute(a, v));
  out.provenance = cert.provenance;
  return out;
}

/// Same certificate in n ≥ cert.n variables.
template <typename T>
Certificate<T> embed_variables(const Certificate<T>& cert, std::size_t n) {
  Certificate<T> out(cert.l1_dim, cert.l2_dim, n);
  for (const auto& t : cert.sos) out.add_sos(t.weight, t.factor.embed(n));
  for (const auto& t : cert.pencil) out.add_pencil(t.weight, t.factor.embed(n));
  out.provenance = cert.provenance;
  return out;
}

/// M = L1 certified by the single pencil term (1, I).
ExactCertificate identity_certificate(const LinearPencil& l1);

/// M = Cᵀ L1 C certified by the pencil term (1, C).
ExactCertificate congruence_certificate(const LinearPencil& l1, const QMatrix& c);

NumericCertificate to_numeric(const ExactCertificate& cert);

/// Weights folded into the factors as √w (all weights become 1).
NumericCertificate fold_weights(const NumericCertificate& cert);

}  // namespace spectra
