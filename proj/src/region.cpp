#include "spectra/region.hpp"

#include <algorithm>
#include <functional>

#include "spectra/errors.hpp"
#include "spectra/exact_linalg.hpp"

namespace spectra {

namespace {

QMatrix linear_parts(const std::vector<AffineFunctional>& fs, std::size_t n) {
  QMatrix a(fs.size(), n);
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = fs[i].linear[j];
  return a;
}

std::vector<QVector> null_space(const std::vector<AffineFunctional>& fs, std::size_t n) {
  if (fs.empty()) {
    std::vector<QVector> out;
    for (std::size_t j = 0; j < n; ++j) out.push_back(QMatrix::identity(n).col(j));
    return out;
  }
  return kernel_basis(linear_parts(fs, n));
}

bool vanishes_on(const Polyhedron& k, const AffineFunctional& f) {
  LPResult r = lp_solve(f, k, Sense::Maximize);
  return r.status == LPStatus::Optimal && r.value == 0;
}

bool is_redundant(const Polyhedron& rest, const AffineFunctional& f) {
  LPResult r = lp_solve(f, rest, Sense::Minimize);
  return r.status == LPStatus::Optimal && r.value >= 0;
}

/// First nonzero coordinate scaled to ±1.
QVector normalize_direction(QVector d) {
  for (const auto& v : d) {
    if (v == 0) continue;
    Rational s = abs(v);
    for (auto& e : d) e /= s;
    break;
  }
  return d;
}

void for_each_subset(std::size_t m, std::size_t size, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(size);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == size) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (size - depth) <= m; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

NonnegResult check_on_vertices(const LinearPencil& l2, const Polyhedron& k, bool strict) {
  if (l2.n() != k.n) throw DimensionMismatch("pencil and region live in different dimensions");
  NonnegResult out;
  VertexSet vs = vertices(k);
  for (const auto& v : vs.vertices) {
    QMatrix at = eval_point(l2, v);
    if (strict ? !pd_check(at) : !psd_check(at)) {
      out.holds = false;
      out.witness = v;
      return out;
    }
  }
  for (const auto& d : vs.rays) {
    QMatrix slope(l2.d(), l2.d());
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0) slope += l2.coeff(i + 1) * d[i];
    if (!psd_check(slope)) {
      out.holds = false;
      out.witness = d;
      out.witness_is_ray = true;
      return out;
    }
  }
  return out;
}

}  // namespace

std::string to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::Empty: return "empty";
    case RegionKind::Singleton: return "singleton";
    case RegionKind::Bounded: return "bounded";
    case RegionKind::Unbounded: return "unbounded";
  }
  return "unknown";
}

RegionClassification classify(const Polyhedron& k) {
  RegionClassification out;
  const std::size_t n = k.n;
  auto fp = feasible_point(k);
  if (!fp) {
    out.kind = RegionKind::Empty;
    return out;
  }

  std::vector<AffineFunctional> implicit;
  for (std::size_t i = 0; i < k.constraints.size(); ++i)
    if (vanishes_on(k, k.constraints[i])) {
      out.implicit_equalities.push_back(i);
      implicit.push_back(k.constraints[i]);
    }

  // Relative interior: maximize t with f_i ≥ t on the other constraints.
  PencilPoint interior = *fp;
  if (out.implicit_equalities.size() < k.constraints.size()) {
    Polyhedron lifted;
    lifted.n = n + 1;
    for (std::size_t i = 0; i < k.constraints.size(); ++i) {
      AffineFunctional g = k.constraints[i];
      g.linear.push_back(0);
      if (!std::binary_search(out.implicit_equalities.begin(), out.implicit_equalities.end(), i)) g.linear.back() = -1;
      lifted.constraints.push_back(std::move(g));
    }
    AffineFunctional cap = AffineFunctional::constant(n + 1, 1);
    cap.linear[n] = -1;
    lifted.constraints.push_back(cap);
    LPResult r = lp_solve(AffineFunctional::coordinate(n + 1, n), lifted, Sense::Maximize);
    if (r.status != LPStatus::Optimal || r.value <= 0) throw Error("classify: relative interior LP failed (internal error)");
    interior.assign(r.point.begin(), r.point.begin() + static_cast<long>(n));
  }
  out.interior_point = interior;
  out.affine_hull.base = interior;
  out.affine_hull.directions = null_space(implicit, n);
  out.dim = out.affine_hull.directions.size();

  if (out.dim == 0) {
    out.kind = RegionKind::Singleton;
  } else {
    out.kind = RegionKind::Bounded;
    for (std::size_t j = 0; j < n && out.kind == RegionKind::Bounded; ++j)
      for (Sense s : {Sense::Maximize, Sense::Minimize})
        if (lp_solve(AffineFunctional::coordinate(n, j), k, s).status == LPStatus::Unbounded) {
          out.kind = RegionKind::Unbounded;
          break;
        }
  }

  // Sequential redundancy elimination.
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < k.constraints.size(); ++i) kept.push_back(i);
  for (std::size_t i = 0; i < k.constraints.size(); ++i) {
    Polyhedron rest;
    rest.n = n;
    for (std::size_t j : kept)
      if (j != i) rest.constraints.push_back(k.constraints[j]);
    if (is_redundant(rest, k.constraints[i])) kept.erase(std::find(kept.begin(), kept.end(), i));
  }
  out.facets = kept;
  return out;
}

VertexSet vertices(const Polyhedron& k) {
  const std::size_t n = k.n;
  if (n > kMaxVertexDimension || k.constraints.size() > kMaxVertexConstraints)
    throw TooLarge("vertex enumeration is limited to n <= " + std::to_string(kMaxVertexDimension) + " and " +
                   std::to_string(kMaxVertexConstraints) + " constraints");
  VertexSet out;
  if (!feasible_point(k)) return out;

  // Split off the lineality space: K = (K ∩ L⊥) + L.
  std::vector<AffineFunctional> rows = k.constraints;
  for (const auto& l : null_space(k.constraints, n)) {
    AffineFunctional f(0, l), g(0, l);
    g *= Rational(-1);
    rows.push_back(f);
    rows.push_back(g);
    out.rays.push_back(normalize_direction(l));
    QVector neg = normalize_direction(l);
    for (auto& e : neg) e = -e;
    out.rays.push_back(neg);
  }
  const std::size_t lineality_rays = out.rays.size();
  Polyhedron pointed(n, rows);
  const std::size_t m = rows.size();

  for_each_subset(m, n, [&](const std::vector<std::size_t>& idx) {
    QMatrix a(n, n);
    QVector b(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < n; ++j) a(r, j) = rows[idx[r]].linear[j];
      b[r] = -rows[idx[r]].a0;
    }
    if (determinant(a) == 0) return;
    QVector x = (inverse(a) * QMatrix::column(b)).col(0);
    if (!pointed.contains(x)) return;
    if (std::find(out.vertices.begin(), out.vertices.end(), x) == out.vertices.end()) out.vertices.push_back(x);
  });

  for_each_subset(m, n - 1, [&](const std::vector<std::size_t>& idx) {
    QMatrix a(n - 1, n);
    for (std::size_t r = 0; r + 1 < n; ++r)
      for (std::size_t j = 0; j < n; ++j) a(r, j) = rows[idx[r]].linear[j];
    std::vector<QVector> ker = n == 1 ? std::vector<QVector>{QVector{1}} : kernel_basis(a);
    if (ker.size() != 1) return;
    for (int sg : {1, -1}) {
      QVector d = ker[0];
      for (auto& e : d) e *= sg;
      bool ok = true;
      for (const auto& f : rows)
        if (f.slope(d) < 0) {
          ok = false;
          break;
        }
      if (!ok) continue;
      d = normalize_direction(d);
      auto begin = out.rays.begin() + static_cast<long>(lineality_rays);
      if (std::find(begin, out.rays.end(), d) == out.rays.end()) out.rays.push_back(d);
    }
  });
  // Lineality directions satisfy every homogeneous row with equality, so the
  // pointed part can never produce them again; drop accidental duplicates.
  for (std::size_t i = 0; i < lineality_rays; ++i)
    for (std::size_t j = out.rays.size(); j-- > lineality_rays;)
      if (out.rays[j] == out.rays[i]) out.rays.erase(out.rays.begin() + static_cast<long>(j));
  return out;
}

SimplexCheck simplex_check(const Polyhedron& k) {
  SimplexCheck out;
  RegionClassification c = classify(k);
  out.facets = c.facets;
  out.is_simplex = c.kind == RegionKind::Bounded && c.dim == k.n && c.facets.size() == k.n + 1;
  return out;
}

NonnegResult pencil_nonneg_on_region(const LinearPencil& l2, const Polyhedron& k) {
  return check_on_vertices(l2, k, false);
}

NonnegResult pencil_positive_on_region(const LinearPencil& l2, const Polyhedron& k) {
  return check_on_vertices(l2, k, true);
}

AlgebraCheck algebra_closure_check(const std::vector<QMatrix>& matrices) {
  AlgebraCheck out;
  if (matrices.empty()) return out;
  const std::size_t d = matrices.front().rows();
  std::vector<QVector> diags;
  for (const auto& m : matrices) {
    if (m.rows() != d || m.cols() != d) throw DimensionMismatch("algebra_closure_check: sizes differ");
    if (!m.is_diagonal()) throw NotDiagonal("algebra_closure_check: matrix is not diagonal");
    QVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = m(i, i);
    diags.push_back(std::move(v));
  }
  QMatrix span = columns_to_matrix(diags, d);
  out.closed = true;
  for (std::size_t a = 0; a < diags.size() && out.closed; ++a)
    for (std::size_t b = a; b < diags.size(); ++b) {
      QVector prod(d);
      for (std::size_t i = 0; i < d; ++i) prod[i] = diags[a][i] * diags[b][i];
      if (!solve(span, prod)) {
        out.closed = false;
        break;
      }
    }
  out.separates = true;
  for (std::size_t i = 0; i < d && out.separates; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      bool split = false;
      for (const auto& v : diags)
        if (v[i] != v[j]) {
          split = true;
          break;
        }
      if (!split) {
        out.separates = false;
        break;
      }
    }
  return out;
}

Polyhedron region_of(const LinearPencil& l1) { return Polyhedron(l1.n(), diag_entries(l1)); }

}  // namespace spectra
