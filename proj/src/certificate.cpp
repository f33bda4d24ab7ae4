#include "spectra/certificate.hpp"

#include <algorithm>

namespace spectra {

namespace {

template <typename T>
VerificationReport compare(const MatrixPoly<T>& rhs, const MatrixPoly<T>& lhs, VerifyMode mode) {
  VerificationReport r;
  r.mode = mode;
  MatrixPoly<T> diff = rhs - lhs;
  for (const auto& [m, c] : diff.terms()) {
    double worst = 0;
    for (const auto& x : c.data()) {
      double v;
      if constexpr (std::is_same_v<T, Rational>) {
        v = std::abs(x.get_d());
      } else {
        v = std::abs(x);
      }
      worst = std::max(worst, v);
    }
    r.per_monomial.push_back({m, worst});
    r.residual = std::max(r.residual, worst);
  }
  return r;
}

void check_shapes(const LinearPencil& l1, const LinearPencil& l2, std::size_t d, std::size_t l, std::size_t n) {
  if (l1.n() != l2.n()) throw DimensionMismatch("L1 and L2 have different numbers of variables");
  if (l1.d() != d || l2.d() != l || l1.n() != n)
    throw DimensionMismatch("certificate sizes (" + std::to_string(d) + ", " + std::to_string(l) + ", n=" + std::to_string(n) +
                            ") do not match the pencils (" + std::to_string(l1.d()) + ", " + std::to_string(l2.d()) +
                            ", n=" + std::to_string(l1.n()) + ")");
}

}  // namespace

VerificationReport verify(const LinearPencil& l1, const LinearPencil& l2, const ExactCertificate& cert) {
  check_shapes(l1, l2, cert.l1_dim, cert.l2_dim, cert.n);
  VerificationReport r = compare(expand(cert, l1), pencil_poly<Rational>(l2), VerifyMode::Exact);
  r.pass = r.per_monomial.empty();
  return r;
}

VerificationReport verify(const LinearPencil& l1, const LinearPencil& l2, const NumericCertificate& cert, double tol) {
  check_shapes(l1, l2, cert.l1_dim, cert.l2_dim, cert.n);
  VerificationReport r = compare(expand(cert, l1), pencil_poly<double>(l2), VerifyMode::Numeric);
  r.pass = r.residual <= tol;
  return r;
}

ExactCertificate pull_back(const ExactCertificate& cert, const QMatrix& m, const PencilPoint& v) {
  if (m.rows() != cert.n || m.cols() != cert.n || v.size() != cert.n) throw DimensionMismatch("pull_back: transformation size");
  QMatrix minv = inverse(m);
  QVector shift = (minv * QMatrix::column(v)).col(0);
  for (auto& s : shift) s = -s;
  return substitute(cert, minv, shift);
}

ExactCertificate identity_certificate(const LinearPencil& l1) {
  ExactCertificate c(l1.d(), l1.d(), l1.n());
  c.add_pencil(Rational(1), QMatrix::identity(l1.d()));
  c.provenance.push_back("identity");
  return c;
}

ExactCertificate congruence_certificate(const LinearPencil& l1, const QMatrix& c) {
  if (c.rows() != l1.d()) throw DimensionMismatch("congruence_certificate: factor rows");
  ExactCertificate out(l1.d(), c.cols(), l1.n());
  out.add_pencil(Rational(1), c);
  return out;
}

NumericCertificate to_numeric(const ExactCertificate& cert) {
  NumericCertificate out(cert.l1_dim, cert.l2_dim, cert.n);
  for (const auto& t : cert.sos) out.add_sos(t.weight.get_d(), to_numeric(t.factor));
  for (const auto& t : cert.pencil) out.add_pencil(t.weight.get_d(), to_numeric(t.factor));
  out.provenance = cert.provenance;
  return out;
}

NumericCertificate fold_weights(const NumericCertificate& cert) {
  NumericCertificate out(cert.l1_dim, cert.l2_dim, cert.n);
  for (const auto& t : cert.sos) out.add_sos(1.0, t.factor * std::sqrt(t.weight));
  for (const auto& t : cert.pencil) out.add_pencil(1.0, t.factor * std::sqrt(t.weight));
  out.provenance = cert.provenance;
  return out;
}

}  // namespace spectra
