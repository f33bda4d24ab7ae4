#include "spectra/engine.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>

#include "spectra/approx_linalg.hpp"
#include "spectra/exact_linalg.hpp"
#include "spectra/region.hpp"

namespace spectra {

namespace {

/// A certificate under construction: exact while every stage is rational.
struct Stage {
  std::optional<ExactCertificate> exact;
  NumericCertificate numeric;
};

Stage exact_stage(ExactCertificate c) {
  NumericCertificate n = to_numeric(c);
  return {std::move(c), std::move(n)};
}

Stage numeric_stage(NumericCertificate c) { return {std::nullopt, std::move(c)}; }

Stage chain(const Stage& outer, const Stage& inner) {
  if (outer.exact && inner.exact) return exact_stage(compose(*outer.exact, *inner.exact));
  return numeric_stage(compose(outer.numeric, inner.numeric));
}

/// Stage in x from one in x' with x = M·x' + v.
Stage pull(const Stage& s, const QMatrix& m, const PencilPoint& v) {
  if (s.exact) return exact_stage(pull_back(*s.exact, m, v));
  const QMatrix minv = inverse(m);
  QVector shift = (minv * QMatrix::column(v)).col(0);
  std::vector<double> dshift;
  for (const Rational& q : shift) dshift.push_back(-q.get_d());
  return numeric_stage(substitute(s.numeric, to_double(minv), dshift));
}

template <typename T>
Certificate<T> place_columns(const Certificate<T>& c, std::size_t offset, std::size_t total) {
  Matrix<T> e(c.l2_dim, total);
  for (std::size_t i = 0; i < c.l2_dim; ++i) e(i, offset + i) = T(1);
  Certificate<T> out(c.l1_dim, total, c.n);
  for (const auto& t : c.sos) out.add_sos(t.weight, t.factor * e);
  for (const auto& t : c.pencil) out.add_pencil(t.weight, t.factor * e);
  return out;
}

template <typename T>
Certificate<T> place_rows(const Certificate<T>& c, std::size_t offset, std::size_t total) {
  Matrix<T> e(total, c.l1_dim);
  for (std::size_t i = 0; i < c.l1_dim; ++i) e(offset + i, i) = T(1);
  Certificate<T> out(total, c.l2_dim, c.n);
  for (const auto& t : c.sos) out.add_sos(t.weight, t.factor);
  for (const auto& t : c.pencil) out.add_pencil(t.weight, e * t.factor);
  return out;
}

template <typename T>
void append(Certificate<T>& into, const Certificate<T>& from) {
  for (const auto& t : from.sos) into.add_sos(t.weight, t.factor);
  for (const auto& t : from.pencil) into.add_pencil(t.weight, t.factor);
}

Stage place_rows(const Stage& s, std::size_t offset, std::size_t total) {
  if (s.exact) return exact_stage(place_rows(*s.exact, offset, total));
  return numeric_stage(place_rows(s.numeric, offset, total));
}

Stage embed(const Stage& s, std::size_t n) {
  if (s.exact) return exact_stage(embed_variables(*s.exact, n));
  return numeric_stage(embed_variables(s.numeric, n));
}

void append(Stage& into, const Stage& from) {
  if (into.exact && from.exact) {
    append(*into.exact, *from.exact);
  } else {
    into.exact.reset();
  }
  append(into.numeric, from.numeric);
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  mpz_class num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

QMatrix row_selector(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  QMatrix m(rows, cols);
  m(i, j) = 1;
  return m;
}

EngineCertificate finish(EnginePath path, Stage s, const LinearPencil& l1, const LinearPencil& l2, const EngineConfig& config,
                         const std::vector<std::string>& trace) {
  std::vector<std::string> provenance{"path:" + to_string(path)};
  provenance.insert(provenance.end(), trace.begin(), trace.end());
  EngineCertificate out;
  out.path = path;
  if (s.exact) {
    s.exact->provenance = provenance;
    out.report = verify(l1, l2, *s.exact);
    if (!out.report.pass) throw Error("internal error: exact certificate from path " + to_string(path) + " does not verify");
    out.numeric = to_numeric(*s.exact);
    out.exact = std::move(s.exact);
    return out;
  }
  s.numeric.provenance = provenance;
  out.report = verify(l1, l2, s.numeric, config.tol);
  if (!out.report.pass) {
    throw NoPathFound("path " + to_string(path) + " produced residual " + std::to_string(out.report.residual), SearchStatus::Unknown,
                      std::nullopt, {});
  }
  out.numeric = std::move(s.numeric);
  return out;
}

SearchOptions search_options(const EngineConfig& config, bool rationalize) {
  SearchOptions o;
  o.tol = config.tol;
  o.max_iterations = config.max_iterations;
  o.denominator_bound = config.denominator_bound;
  o.rationalize = rationalize;
  return o;
}

/// Certificate of L2 over L1 where L1(0) ⪰ 0 satisfies the image condition:
/// reduce L1 (and L2 when its constant term is diagonal), then search for a
/// constant certificate between the reduced pencils.
Stage reduced_search_stage(const LinearPencil& l1, const LinearPencil& l2, const EngineConfig& config,
                           std::vector<std::string>* trace) {
  const MonicReduction r1 = monic_reduce(l1);
  trace->push_back("monic reduction of L1 (" + to_string(r1.backend) + ", size " + std::to_string(r1.reduced.d()) + ")");
  std::optional<MonicReduction> r2;
  if (l2.coeff(0).is_diagonal()) {
    try {
      r2 = monic_reduce(l2);
      trace->push_back("monic reduction of L2 (" + to_string(r2->backend) + ", size " + std::to_string(r2->reduced.d()) + ")");
    } catch (const NotInterior&) {
    }
  }
  const LinearPencil& target = r2 ? r2->reduced : l2;
  const bool exact_chain = r1.backend == MonicBackend::ExactScaled && (!r2 || r2->backend == MonicBackend::ExactScaled);
  const SearchResult sr = constant_certificate_search(r1.reduced, target, search_options(config, exact_chain));
  if (sr.status != SearchStatus::Feasible) {
    throw NoPathFound("constant certificate search on the reduced pair returned " + to_string(sr.status), sr.status, sr.refutation,
                      {});
  }
  trace->push_back(sr.exact ? "constant certificate (exact after rounding)" : "constant certificate (numeric)");
  Stage found = sr.exact ? exact_stage(*sr.exact) : numeric_stage(*sr.numeric);
  const Stage inner = exact_stage(congruence_certificate(l1, r1.c));
  if (r2) found = chain(exact_stage(congruence_certificate(r2->reduced, r2->dmat)), found);
  return chain(found, inner);
}

QMatrix identity_n(std::size_t n) { return QMatrix::identity(n); }

/// Full-dimensional bounded diagonal case around an interior point p.
Stage full_dimensional_stage(const LinearPencil& l1, const LinearPencil& l2, const PencilPoint& p, const EngineConfig& config,
                             std::vector<std::string>* trace) {
  trace->push_back("translate to interior point (" + point_string(p) + ")");
  const Stage s = reduced_search_stage(translate(l1, p), translate(l2, p), config, trace);
  return pull(s, identity_n(l1.n()), p);
}

Stage lower_dimensional_stage(const LinearPencil& l1, const LinearPencil& l2, const RegionClassification& cls,
                              const EngineConfig& config, std::vector<std::string>* trace) {
  const std::size_t n = l1.n(), d = l1.d(), k = cls.dim;
  std::vector<QVector> cols = cls.affine_hull.directions;
  for (std::size_t j = 0; j < n && cols.size() < n; ++j) {
    std::vector<QVector> trial = cols;
    trial.push_back(unit_column<Rational>(n, j).col(0));
    if (rank(columns_to_matrix(trial, n)) == trial.size()) cols = std::move(trial);
  }
  const QMatrix m = columns_to_matrix(cols, n);
  const PencilPoint& b = cls.affine_hull.base;
  const LinearPencil l1p = change_variables(translate(l1, b), m);
  const LinearPencil l2p = change_variables(translate(l2, b), m);
  trace->push_back("affine hull of dimension " + std::to_string(k) + "; completed to a basis by unit vectors");

  std::vector<AffineFunctional> pm_entries;
  for (std::size_t i = k; i < n; ++i) {
    pm_entries.push_back(AffineFunctional::coordinate(n, i));
    pm_entries.push_back(Rational(-1) * AffineFunctional::coordinate(n, i));
  }
  const std::size_t total = d + pm_entries.size();

  // Outer: L2' over L̃ = L̃₁,₁ ⊕ ⊕ diag(x_i, −x_i).
  const LinearPencil l11 = restrict_variables(l1p, k);
  const LinearPencil l21 = restrict_variables(l2p, k);
  const RegionClassification sub = classify(region_of(l11));
  if (sub.kind != RegionKind::Bounded || sub.dim != k || !sub.interior_point) {
    throw Error("internal error: restricted region is not full-dimensional");
  }
  Stage outer = place_rows(embed(full_dimensional_stage(l11, l21, *sub.interior_point, config, trace), n), 0, total);
  for (std::size_t i = k; i < n; ++i)
    append(outer, exact_stage(place_rows(express_symmetric_via_pm(l2p.coeff(i + 1), i, n), d + 2 * (i - k), total)));

  // Inner: L̃ over L1'. L̃₁,₁ = L1' − Σ_{i≥k} P'_i x_i.
  ExactCertificate block = identity_certificate(l1p);
  for (std::size_t i = k; i < n; ++i) {
    const ExactCertificate pm = diagonal_farkas_certificate(
        l1p, {AffineFunctional::coordinate(n, i), Rational(-1) * AffineFunctional::coordinate(n, i)});
    append(block, compose(express_symmetric_via_pm(-l1p.coeff(i + 1), i, n), pm));
  }
  ExactCertificate inner = place_columns(block, 0, total);
  append(inner, place_columns(diagonal_farkas_certificate(l1p, pm_entries), d, total));
  trace->push_back("split L1 into its hull part and " + std::to_string(n - k) + " ±x blocks");
  return pull(chain(outer, exact_stage(inner)), m, b);
}

/// Some x with vᵀ·(R0 + x·R1)·v < 0 when R1 ≠ 0.
PencilPoint line_witness(const QMatrix& r0, const QMatrix& r1) {
  const std::size_t l = r1.rows();
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i; j < l; ++j) {
      QMatrix v(l, 1);
      v(i, 0) = 1;
      if (j != i) v(j, 0) = 1;
      const Rational q1 = (v.transpose() * r1 * v)(0, 0);
      if (q1 == 0) continue;
      const Rational q0 = (v.transpose() * r0 * v)(0, 0);
      return {-(q0 + 1) / q1};
    }
  return {Rational(0)};
}

std::vector<std::int64_t> rational_ladder() { return {1, 2, 4, 10, 100, 10000, 1000000, 100000000}; }

}  // namespace

std::string to_string(MonicBackend b) { return b == MonicBackend::ExactScaled ? "exact-scaled" : "approx-monic"; }

std::string to_string(EnginePath p) {
  switch (p) {
    case EnginePath::Identity: return "Identity";
    case EnginePath::EmptyRegion: return "EmptyRegion";
    case EnginePath::Singleton: return "Singleton";
    case EnginePath::DiagonalBounded: return "DiagonalBounded";
    case EnginePath::LowerDimensional: return "LowerDimensional";
    case EnginePath::OneVariableBounded: return "OneVariableBounded";
    case EnginePath::OneVariableHalfLine: return "OneVariableHalfLine";
    case EnginePath::OneVariableFullLine: return "OneVariableFullLine";
    case EnginePath::Simplex: return "Simplex";
    case EnginePath::AlgebraSpan: return "AlgebraSpan";
    case EnginePath::SdpFallback: return "SdpFallback";
  }
  return "SdpFallback";
}

MonicReduction monic_reduce(const LinearPencil& l) {
  const QMatrix& p0 = l.coeff(0);
  if (!psd_check(p0)) throw NotInterior("monic_reduce: constant term is not positive semidefinite");
  const std::vector<QVector> kernel = kernel_basis(p0);
  for (std::size_t i = 1; i <= l.n(); ++i)
    for (const QVector& v : kernel)
      if (!(l.coeff(i) * QMatrix::column(v)).is_zero()) {
        throw NotInterior("monic_reduce: image of P" + std::to_string(i) + " is not contained in the image of P0");
      }
  const std::size_t d = l.d();
  if (p0.is_diagonal()) {
    std::vector<std::size_t> live;
    for (std::size_t j = 0; j < d; ++j)
      if (p0(j, j) > 0) live.push_back(j);
    QMatrix c(d, live.size()), dm(live.size(), d);
    for (std::size_t k = 0; k < live.size(); ++k) {
      const std::optional<Rational> root = exact_sqrt(p0(live[k], live[k]));
      const Rational s = root ? Rational(1 / *root) : Rational(1);
      c(live[k], k) = s;
      dm(k, live[k]) = 1 / s;
    }
    return {congruence(l, c), c, dm, MonicBackend::ExactScaled};
  }
  const std::size_t r = rank(p0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(p0));
  Eigen::MatrixXd c(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(r));
  Eigen::MatrixXd dm(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < r; ++k) {
    const Eigen::Index src = static_cast<Eigen::Index>(d - r + k);
    const double lambda = es.eigenvalues()(src);
    c.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(src) / std::sqrt(lambda);
    dm.row(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(src).transpose() * std::sqrt(lambda);
  }
  std::vector<QMatrix> coeffs{QMatrix::identity(r)};
  for (std::size_t i = 1; i <= l.n(); ++i) {
    const Eigen::MatrixXd m = c.transpose() * to_eigen(l.coeff(i)) * c;
    QMatrix q = from_double(from_eigen(m));
    coeffs.push_back((q + q.transpose()) * Rational(1, 2));
  }
  return {LinearPencil(coeffs), from_double(from_eigen(c)), from_double(from_eigen(dm)), MonicBackend::ApproxMonic};
}

LinearPencil pm_pencil(std::size_t n, std::size_t i) {
  return LinearPencil::from_diagonal({AffineFunctional::coordinate(n, i), Rational(-1) * AffineFunctional::coordinate(n, i)});
}

ExactCertificate express_symmetric_via_pm(const QMatrix& a, std::size_t i, std::size_t n) {
  if (!a.is_symmetric()) throw DimensionMismatch("express_symmetric_via_pm: matrix is not symmetric");
  const std::size_t l = a.rows();
  ExactCertificate out(2, l, n);
  for (const Rank1Term& t : weighted_rank1(a).terms) {
    QMatrix b(2, l);
    const std::size_t slot = t.sign > 0 ? 0 : 1;
    for (std::size_t j = 0; j < l; ++j) b(slot, j) = t.vector[j];
    out.add_pencil(t.weight, b);
  }
  out.provenance.push_back("rank-one expansion over diag(x" + std::to_string(i + 1) + ", -x" + std::to_string(i + 1) + ")");
  return out;
}

ExactCertificate diagonal_farkas_certificate(const LinearPencil& l1, const std::vector<AffineFunctional>& entries) {
  const Polyhedron k = region_of(l1);
  const std::size_t d = l1.d(), m = entries.size();
  ExactCertificate out(d, m, l1.n());
  for (std::size_t e = 0; e < m; ++e) {
    const FarkasCertificate fc = farkas_certificate(k, entries[e]);
    if (fc.c0 > 0) out.add_sos(fc.c0, row_selector(1, m, 0, e));
    for (std::size_t j = 0; j < d; ++j)
      if (fc.coeffs[j] > 0) out.add_pencil(fc.coeffs[j], row_selector(d, m, j, e));
  }
  out.provenance.push_back("scalar Farkas per diagonal entry");
  return out;
}

ExactCertificate empty_region_certificate(const LinearPencil& l1, const LinearPencil& l2) {
  if (l1.n() != l2.n()) throw DimensionMismatch("empty_region_certificate: variable counts differ");
  const Polyhedron k = region_of(l1);
  const FarkasCertificate fc = cone_contains_minus_one(k);
  const Rational s = 1 + fc.c0;
  const std::size_t d = l1.d(), l = l2.d(), n = l1.n();
  const QMatrixPoly p = pencil_poly<Rational>(l2);
  const QMatrixPoly id = QMatrixPoly::constant(QMatrix::identity(l), n);
  const QMatrixPoly plus = (p + id) * Rational(1, 2);
  const QMatrixPoly minus = (p - id) * Rational(1, 2);
  ExactCertificate out(d, l, n);
  out.add_sos(Rational(1), plus);
  for (std::size_t j = 0; j < d; ++j) {
    if (fc.coeffs[j] == 0) continue;
    const Rational w = fc.coeffs[j] / s;
    for (std::size_t r = 0; r < l; ++r) out.add_pencil(w, row_selector(d, l, j, r) * minus);
  }
  out.provenance.push_back("4a = (a+1)^2 - (a-1)^2 with -1 in the cone of the diagonal");
  return out;
}

EngineCertificate certify_singleton(const LinearPencil& l1, const LinearPencil& l2, const EngineConfig& config) {
  if (l1.n() != l2.n()) throw DimensionMismatch("certify_singleton: variable counts differ");
  const Polyhedron k = region_of(l1);
  const RegionClassification cls = classify(k);
  if (cls.kind != RegionKind::Singleton) throw PreconditionFailed("certify_singleton: region is " + to_string(cls.kind), "");
  const PencilPoint& a = *cls.interior_point;
  if (!psd_check(eval_point(l2, a))) throw PositivityFailed("certify_singleton: L2 is not PSD at the point", point_string(a));
  const std::size_t n = l1.n(), l = l2.d();
  const LinearPencil l1t = translate(l1, a);
  const LinearPencil l2t = translate(l2, a);
  std::vector<AffineFunctional> entries;
  for (std::size_t i = 0; i < n; ++i) {
    entries.push_back(AffineFunctional::coordinate(n, i));
    entries.push_back(Rational(-1) * AffineFunctional::coordinate(n, i));
  }
  const ExactCertificate inner = diagonal_farkas_certificate(l1t, entries);
  ExactCertificate outer(2 * n, l, n);
  for (const Rank1Term& t : weighted_rank1(l2t.coeff(0)).terms) {
    QMatrix row(1, l);
    for (std::size_t j = 0; j < l; ++j) row(0, j) = t.vector[j];
    outer.add_sos(t.weight, row);
  }
  for (std::size_t i = 0; i < n; ++i) append(outer, place_rows(express_symmetric_via_pm(l2t.coeff(i + 1), i, n), 2 * i, 2 * n));
  const Stage s = pull(exact_stage(compose(outer, inner)), QMatrix::identity(n), a);
  return finish(EnginePath::Singleton, s, l1, l2, config,
                {"region is the point (" + point_string(a) + ")", "L2(a) by rank-one terms, each L2 slope over diag(x, -x)",
                 "diag(x, -x) blocks by scalar Farkas"});
}

EngineCertificate certify_diagonal_bounded(const LinearPencil& l1, const LinearPencil& l2, const EngineConfig& config) {
  if (l1.n() != l2.n()) throw DimensionMismatch("certify_diagonal_bounded: variable counts differ");
  const Polyhedron k = region_of(l1);
  const RegionClassification cls = classify(k);
  switch (cls.kind) {
    case RegionKind::Empty:
      return finish(EnginePath::EmptyRegion, exact_stage(empty_region_certificate(l1, l2)), l1, l2, config, {"region is empty"});
    case RegionKind::Singleton:
      return certify_singleton(l1, l2, config);
    case RegionKind::Unbounded:
      throw NotBounded("certify_diagonal_bounded: region is unbounded");
    case RegionKind::Bounded:
      break;
  }
  const NonnegResult pos = pencil_positive_on_region(l2, k);
  if (!pos.holds) throw PositivityFailed("certify_diagonal_bounded: L2 is not positive definite on the region", point_string(*pos.witness));
  std::vector<std::string> trace{"bounded region of dimension " + std::to_string(cls.dim)};
  if (cls.dim == l1.n()) {
    const Stage s = full_dimensional_stage(l1, l2, *cls.interior_point, config, &trace);
    return finish(EnginePath::DiagonalBounded, s, l1, l2, config, trace);
  }
  const Stage s = lower_dimensional_stage(l1, l2, cls, config, &trace);
  return finish(EnginePath::LowerDimensional, s, l1, l2, config, trace);
}

OneVariableInterval one_variable_interval(const LinearPencil& l1) {
  if (l1.n() != 1) throw NotOneVariable("one_variable_interval: pencil has " + std::to_string(l1.n()) + " variables");
  OneVariableInterval out;
  const QMatrix& p0 = l1.coeff(0);
  const QMatrix& p1 = l1.coeff(1);
  if (p1.is_zero()) {
    out.has_interior = psd_check(p0);
    out.interior = 0;
    return out;
  }
  const std::vector<QVector> basis = image_basis(p0 * p0 + p1 * p1);
  const QMatrix u = columns_to_matrix(basis, l1.d());
  const QMatrix a0 = u.transpose() * p0 * u;
  const QMatrix a1 = u.transpose() * p1 * u;
  // The exact basis can be badly conditioned; numerics use an orthonormal one.
  const Eigen::MatrixXd ue = to_eigen(u);
  const Eigen::MatrixXd qb = Eigen::HouseholderQR<Eigen::MatrixXd>(ue).householderQ() * Eigen::MatrixXd::Identity(ue.rows(), ue.cols());
  const Eigen::MatrixXd e0 = qb.transpose() * to_eigen(p0) * qb, e1 = qb.transpose() * to_eigen(p1) * qb;
  auto g = [&](double x) { return min_eigenvalue(e0 + x * e1); };
  const double radius = 1e6 * (1.0 + e0.cwiseAbs().maxCoeff() / e1.cwiseAbs().maxCoeff());
  double lo = -radius, hi = radius;
  for (int it = 0; it < 300; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (g(m1) < g(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double best = 0.5 * (lo + hi);
  std::optional<Rational> p;
  std::vector<Rational> tries{0, 1, -1};
  for (std::int64_t den : rational_ladder()) tries.push_back(best_rational(best, den));
  for (const Rational& q : tries)
    if (pd_check(a0 + a1 * q)) {
      p = q;
      break;
    }
  if (!p) {
    for (const Rational& q : tries)
      if (psd_check(a0 + a1 * q)) {
        out.point = q;
        break;
      }
    return out;
  }
  out.has_interior = true;
  const Eigen::MatrixXd at = e0 + p->get_d() * e1;
  const Eigen::MatrixXd lt = at.llt().matrixL();
  const Eigen::MatrixXd li = lt.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(at.rows(), at.cols()));
  const Eigen::MatrixXd mm = li * e1 * li.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (mm + mm.transpose()), Eigen::EigenvaluesOnly);
  const double mu_min = es.eigenvalues()(0), mu_max = es.eigenvalues()(es.eigenvalues().size() - 1);
  // A side is bounded exactly when the restricted slope is not semidefinite
  // of the matching sign.
  if (!psd_check(a1)) out.upper = p->get_d() - 1.0 / mu_min;
  if (!psd_check(-a1)) out.lower = p->get_d() - 1.0 / mu_max;
  auto confirm = [&](double e) -> std::optional<Rational> {
    for (std::int64_t den : rational_ladder()) {
      const Rational q = best_rational(e, den);
      if (std::abs(q.get_d() - e) > 1e-9 * (1.0 + std::abs(e))) continue;
      const QMatrix at_q = a0 + a1 * q;
      if (psd_check(at_q) && determinant(at_q) == 0) return q;
    }
    return std::nullopt;
  };
  if (out.lower) out.lower_exact = confirm(*out.lower);
  if (out.upper) out.upper_exact = confirm(*out.upper);
  // Prefer a simple interior point.
  std::vector<Rational> candidates;
  if (out.lower && out.upper) {
    const Rational a = out.lower_exact ? *out.lower_exact : best_rational(*out.lower, 1000000);
    const Rational b = out.upper_exact ? *out.upper_exact : best_rational(*out.upper, 1000000);
    candidates.push_back((a + b) / 2);
  } else if (out.lower) {
    candidates.push_back(Rational(static_cast<long>(std::floor(*out.lower)) + 1));
  } else if (out.upper) {
    candidates.push_back(Rational(static_cast<long>(std::ceil(*out.upper)) - 1));
  } else {
    candidates.push_back(0);
  }
  out.interior = *p;
  for (const Rational& c : candidates)
    if (pd_check(a0 + a1 * c)) out.interior = c;
  return out;
}

EngineCertificate certify_one_variable(const LinearPencil& l1, const LinearPencil& l2, const EngineConfig& config) {
  if (l1.n() != 1 || l2.n() != 1) throw NotOneVariable("certify_one_variable: both pencils must have one variable");
  const OneVariableInterval iv = one_variable_interval(l1);
  if (!iv.has_interior) throw NoInterior("certify_one_variable: the interval has empty interior");
  const std::size_t d = l1.d(), l = l2.d();
  const QMatrix& r0 = l2.coeff(0);
  const QMatrix& r1 = l2.coeff(1);

  if (!iv.lower && !iv.upper) {
    if (!r1.is_zero() || !psd_check(r0)) {
      throw PositivityFailed("certify_one_variable: L2 is not PSD on the whole line", point_string(line_witness(r0, r1)));
    }
    ExactCertificate c(d, l, 1);
    for (const Rank1Term& t : weighted_rank1(r0).terms) {
      QMatrix row(1, l);
      for (std::size_t j = 0; j < l; ++j) row(0, j) = t.vector[j];
      c.add_sos(t.weight, row);
    }
    return finish(EnginePath::OneVariableFullLine, exact_stage(c), l1, l2, config, {"interval is the whole line", "L2 constant PSD"});
  }

  // Positivity at the finite endpoints.
  const double l2scale = 1.0 + to_eigen(r0).cwiseAbs().maxCoeff() + to_eigen(r1).cwiseAbs().maxCoeff();
  auto check_endpoint = [&](const std::optional<double>& e, const std::optional<Rational>& exact) {
    if (!e) return;
    if (exact) {
      if (!psd_check(eval_point(l2, {*exact}))) throw PositivityFailed("certify_one_variable: L2 is not PSD at an endpoint", point_string({*exact}));
      return;
    }
    if (min_eigenvalue(to_eigen(r0) + *e * to_eigen(r1)) < -1e-9 * l2scale * (1.0 + std::abs(*e))) {
      throw PositivityFailed("certify_one_variable: L2 is not PSD at an endpoint", std::to_string(*e));
    }
  };
  check_endpoint(iv.lower, iv.lower_exact);
  check_endpoint(iv.upper, iv.upper_exact);

  if (iv.lower && iv.upper) {
    std::vector<std::string> trace{"bounded interval [" + std::to_string(*iv.lower) + ", " + std::to_string(*iv.upper) + "]"};
    const PencilPoint p{iv.interior};
    trace.push_back("translate to interior point " + point_string(p));
    const Stage s = reduced_search_stage(translate(l1, p), translate(l2, p), config, &trace);
    return finish(EnginePath::OneVariableBounded, pull(s, QMatrix::identity(1), p), l1, l2, config, trace);
  }

  // Half line: x = e + s·y with y ≥ 0.
  const double s = iv.lower ? 1.0 : -1.0;
  const double e = iv.lower ? *iv.lower : *iv.upper;
  const std::optional<Rational> e_exact = iv.lower ? iv.lower_exact : iv.upper_exact;
  const double ev = e_exact ? e_exact->get_d() : e;
  if (s < 0 && !psd_check(-r1)) throw PositivityFailed("certify_one_variable: L2 is not PSD along the ray", "-inf");
  if (s > 0 && !psd_check(r1)) throw PositivityFailed("certify_one_variable: L2 is not PSD along the ray", "+inf");
  Eigen::MatrixXd q0, q1 = s * to_eigen(l1.coeff(1)), t0, t1 = s * to_eigen(r1);
  if (e_exact) {
    q0 = to_eigen(eval_point(l1, {*e_exact}));
    t0 = to_eigen(eval_point(l2, {*e_exact}));
  } else {
    q0 = to_eigen(l1.coeff(0)) + ev * to_eigen(l1.coeff(1));
    t0 = to_eigen(r0) + ev * to_eigen(r1);
  }
  const SimultaneousDiagonalization sd1 = simultaneous_diag_psd(q0, q1, 1e-9, 1e-8);
  const SimultaneousDiagonalization sd2 = simultaneous_diag_psd(t0, t1, 1e-9, 1e-8);
  const Eigen::VectorXd alpha = (sd1.S.transpose() * q0 * sd1.S).diagonal();
  const Eigen::VectorXd beta = (sd1.S.transpose() * q1 * sd1.S).diagonal();
  const double beta_tol = 1e-12 * (1.0 + beta.cwiseAbs().maxCoeff());
  Eigen::Index jstar = -1;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (beta(j) <= beta_tol) continue;
    if (jstar < 0 || alpha(j) / beta(j) < alpha(jstar) / beta(jstar)) jstar = j;
  }
  if (jstar < 0) throw NoInterior("certify_one_variable: no diagonal entry bounds the half line");
  const Eigen::VectorXd gamma = (sd2.S.transpose() * t0 * sd2.S).diagonal();
  const Eigen::VectorXd delta = (sd2.S.transpose() * t1 * sd2.S).diagonal();
  const Eigen::MatrixXd tinv = sd2.S.inverse();
  NumericCertificate c(d, l, 1);
  const double ratio = alpha(jstar) / beta(jstar);
  for (Eigen::Index k = 0; k < gamma.size(); ++k) {
    const Eigen::RowVectorXd u = tinv.row(k);
    const double sos = gamma(k) - std::max(0.0, delta(k)) * ratio;
    if (sos > 0) c.add_sos(sos, from_eigen(u));
    if (delta(k) > 0) c.add_pencil(delta(k) / beta(jstar), from_eigen(sd1.S.col(jstar) * u));
  }
  std::vector<std::string> trace{std::string(s > 0 ? "half line [e, +inf)" : "half line (-inf, e]") + " with e = " +
                                     (e_exact ? to_string(*e_exact) : std::to_string(e)),
                                 "simultaneous diagonalization of both pencils", "scalar Farkas per diagonal entry"};
  // y = s·(x − e).
  DMatrix minv(1, 1);
  minv(0, 0) = s;
  return finish(EnginePath::OneVariableHalfLine, numeric_stage(substitute(c, minv, std::vector<double>{-s * ev})), l1, l2, config,
                trace);
}

EngineCertificate certify_simplex(const LinearPencil& l1, const LinearPencil& l2, const EngineConfig& config) {
  if (l1.n() != l2.n()) throw DimensionMismatch("certify_simplex: variable counts differ");
  const Polyhedron k = region_of(l1);
  const SimplexCheck sc = simplex_check(k);
  if (!sc.is_simplex) throw NotSimplex("certify_simplex: region is not a simplex");
  const NonnegResult nn = pencil_nonneg_on_region(l2, k);
  if (!nn.holds) throw PositivityFailed("certify_simplex: L2 is not PSD on the region", point_string(*nn.witness));
  const std::size_t n = l1.n();
  std::vector<AffineFunctional> facets;
  for (std::size_t f : sc.facets) facets.push_back(k.constraints[f]);
  const LinearPencil lf = LinearPencil::from_diagonal(facets);
  const ExactCertificate facet_cert = diagonal_farkas_certificate(l1, facets);

  // Max-min-slack interior point.
  Polyhedron lifted;
  lifted.n = n + 1;
  for (AffineFunctional f : facets) {
    f.linear.push_back(-1);
    lifted.constraints.push_back(std::move(f));
  }
  const LPResult lp = lp_solve(AffineFunctional::coordinate(n + 1, n), lifted, Sense::Maximize);
  if (lp.status != LPStatus::Optimal || lp.value <= 0) throw Error("internal error: simplex interior LP failed");
  const PencilPoint p(lp.point.begin(), lp.point.begin() + static_cast<long>(n));

  std::vector<std::string> trace{"facet pencil of " + std::to_string(facets.size()) + " entries by scalar Farkas",
                                 "translate to max-min-slack point (" + point_string(p) + ")"};
  const Stage s = reduced_search_stage(translate(lf, p), translate(l2, p), config, &trace);
  // The facet certificate has constant factors, so it survives translation.
  const Stage full = chain(pull(s, QMatrix::identity(n), p), exact_stage(facet_cert));
  return finish(EnginePath::Simplex, full, l1, l2, config, trace);
}

EngineCertificate certify_auto(const LinearPencil& l1, const LinearPencil& l2, const EngineConfig& config) {
  if (l1.n() != l2.n()) throw DimensionMismatch("certify_auto: variable counts differ");
  if (l1 == l2) return finish(EnginePath::Identity, exact_stage(identity_certificate(l1)), l1, l2, config, {"L2 equals L1"});
  std::vector<std::string> diagnostics;
  auto attempt = [&](EnginePath path, auto&& run) -> std::optional<EngineCertificate> {
    try {
      return run();
    } catch (const PositivityFailed&) {
      throw;
    } catch (const Error& e) {
      diagnostics.push_back(to_string(path) + ": " + e.what());
      return std::nullopt;
    }
  };
  if (is_diagonal(l1)) {
    const Polyhedron k = region_of(l1);
    const RegionClassification cls = classify(k);
    if (cls.kind != RegionKind::Empty) {
      std::optional<NonnegResult> nn;
      try {
        nn = pencil_nonneg_on_region(l2, k);
      } catch (const TooLarge&) {
        diagnostics.push_back("positivity check skipped: region too large to enumerate");
      }
      if (nn && !nn->holds) {
        throw PositivityFailed("certify_auto: L2 is not PSD on the region", point_string(*nn->witness) + (nn->witness_is_ray ? " (ray)" : ""));
      }
    }
    if (cls.kind == RegionKind::Empty || cls.kind == RegionKind::Singleton) {
      const EnginePath path = cls.kind == RegionKind::Empty ? EnginePath::EmptyRegion : EnginePath::Singleton;
      if (auto r = attempt(path, [&] { return certify_diagonal_bounded(l1, l2, config); })) return *r;
    } else if (cls.kind == RegionKind::Bounded) {
      if (cls.dim == l1.n()) {
        const SimplexCheck sc = simplex_check(k);
        if (sc.is_simplex) {
          const AlgebraCheck ac = algebra_closure_check(l1.coeffs());
          const EnginePath path = ac.closed && ac.separates ? EnginePath::AlgebraSpan : EnginePath::Simplex;
          if (auto r = attempt(path, [&] {
                EngineCertificate c = certify_simplex(l1, l2, config);
                if (path == EnginePath::AlgebraSpan) {
                  c.path = path;
                  auto& prov = c.exact ? c.exact->provenance : c.numeric.provenance;
                  prov.front() = "path:" + to_string(path);
                  prov.insert(prov.begin() + 1, "diagonal algebra is closed and separating");
                  c.numeric.provenance = prov;
                }
                return c;
              }))
            return *r;
        }
      }
      const EnginePath path = cls.dim == l1.n() ? EnginePath::DiagonalBounded : EnginePath::LowerDimensional;
      if (auto r = attempt(path, [&] { return certify_diagonal_bounded(l1, l2, config); })) return *r;
    } else if (l1.n() == 1) {
      if (auto r = attempt(EnginePath::OneVariableHalfLine, [&] { return certify_one_variable(l1, l2, config); })) return *r;
    }
  } else if (l1.n() == 1) {
    if (auto r = attempt(EnginePath::OneVariableBounded, [&] { return certify_one_variable(l1, l2, config); })) return *r;
  }

  std::optional<RefutationReport> last_refutation;
  SearchStatus last = SearchStatus::Unknown;
  for (unsigned degree = 0; degree <= config.degree_cap; ++degree) {
    const SearchResult r = refute(l1, l2, degree, search_options(config, true));
    last = r.status;
    if (r.status == SearchStatus::Feasible) {
      const Stage s = r.exact ? exact_stage(*r.exact) : numeric_stage(*r.numeric);
      std::vector<std::string> trace{"degree-" + std::to_string(degree) + " search"};
      try {
        return finish(EnginePath::SdpFallback, s, l1, l2, config, trace);
      } catch (const NoPathFound& e) {
        diagnostics.push_back(e.what());
        continue;
      }
    }
    diagnostics.push_back("degree " + std::to_string(degree) + " search: " + to_string(r.status));
    if (r.refutation) last_refutation = r.refutation;
  }
  throw NoPathFound("certify_auto: no path produced a certificate", last, last_refutation, diagnostics);
}

}  // namespace spectra
