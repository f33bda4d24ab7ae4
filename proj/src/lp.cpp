#include "spectra/lp.hpp"

#include <utility>

#include "spectra/errors.hpp"

namespace spectra {

Polyhedron::Polyhedron(std::size_t dim, std::vector<AffineFunctional> fs) : n(dim), constraints(std::move(fs)) {
  for (const auto& f : constraints)
    if (f.n() != n) throw DimensionMismatch("constraint in the wrong ambient dimension");
}

bool Polyhedron::contains(const PencilPoint& x) const {
  for (const auto& f : constraints)
    if (f(x) < 0) return false;
  return true;
}

Polyhedron Polyhedron::without(std::size_t index) const {
  Polyhedron p = *this;
  p.constraints.erase(p.constraints.begin() + static_cast<long>(index));
  return p;
}

bool certifies(const FarkasCertificate& cert, const Polyhedron& k, const AffineFunctional& f) {
  if (cert.coeffs.size() != k.constraints.size() || cert.c0 < 0) return false;
  AffineFunctional sum = AffineFunctional::constant(k.n, cert.c0);
  for (std::size_t i = 0; i < cert.coeffs.size(); ++i) {
    if (cert.coeffs[i] < 0) return false;
    sum += cert.coeffs[i] * k.constraints[i];
  }
  return sum == f;
}

namespace detail {

namespace {

class Tableau {
 public:
  Tableau(const QMatrix& a, const std::vector<Rational>& b)
      : m_(a.rows()), n_(a.cols()), t_(a.rows(), a.cols() + a.rows() + 1), basis_(a.rows()), active_(a.rows(), true) {
    for (std::size_t i = 0; i < m_; ++i) {
      const bool flip = b[i] < 0;
      for (std::size_t j = 0; j < n_; ++j) t_(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
      t_(i, n_ + i) = 1;
      t_(i, rhs()) = flip ? Rational(-b[i]) : b[i];
      basis_[i] = n_ + i;
    }
  }

  std::size_t rhs() const { return n_ + m_; }

  // Reduced costs r_j = c_j − c_Bᵀ B⁻¹ A_j and −c_Bᵀ B⁻¹ b in the last slot.
  void set_objective(const std::vector<Rational>& c_full) {
    obj_.assign(rhs() + 1, Rational(0));
    for (std::size_t j = 0; j < rhs(); ++j) obj_[j] = c_full[j];
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const Rational& cb = c_full[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= rhs(); ++j) obj_[j] -= cb * t_(i, j);
    }
  }

  // Returns false when unbounded (entering column left in *unbounded_col).
  bool optimize(std::size_t allowed_cols, std::size_t* unbounded_col) {
    for (;;) {
      std::size_t enter = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j)
        if (obj_[j] > 0) {
          enter = j;
          break;
        }
      if (enter == allowed_cols) return true;

      std::size_t leave = m_;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!active_[i] || t_(i, enter) <= 0) continue;
        Rational ratio = t_(i, rhs()) / t_(i, enter);
        if (leave == m_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) {
        *unbounded_col = enter;
        return false;
      }
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t_(r, c);
    for (std::size_t j = 0; j <= rhs(); ++j) t_(r, j) *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || !active_[i] || t_(i, c) == 0) continue;
      Rational f = t_(i, c);
      for (std::size_t j = 0; j <= rhs(); ++j) t_(i, j) -= f * t_(r, j);
    }
    if (obj_[c] != 0) {
      Rational f = obj_[c];
      for (std::size_t j = 0; j <= rhs(); ++j) obj_[j] -= f * t_(r, j);
    }
    basis_[r] = c;
  }

  // After phase one: pivot artificial variables out of the basis or retire
  // their (redundant) rows.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i] || basis_[i] < n_) continue;
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (t_(i, j) != 0) {
          col = j;
          break;
        }
      if (col == n_) {
        active_[i] = false;
      } else {
        pivot(i, col);
      }
    }
  }

  Rational value() const { return -obj_[rhs()]; }

  std::vector<Rational> solution() const {
    std::vector<Rational> y(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (active_[i] && basis_[i] < n_) y[basis_[i]] = t_(i, rhs());
    return y;
  }

  std::vector<Rational> ray(std::size_t enter) const {
    std::vector<Rational> d(n_, Rational(0));
    d[enter] = 1;
    for (std::size_t i = 0; i < m_; ++i)
      if (active_[i] && basis_[i] < n_) d[basis_[i]] = -t_(i, enter);
    return d;
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }

 private:
  std::size_t m_, n_;
  QMatrix t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
  std::vector<Rational> obj_;
};

}  // namespace

StandardResult solve_standard(const QMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  if (b.size() != a.rows() || c.size() != a.cols()) throw DimensionMismatch("solve_standard: shapes");
  Tableau tab(a, b);
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();

  std::vector<Rational> phase1(n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  tab.set_objective(phase1);
  std::size_t unused = 0;
  tab.optimize(n + m, &unused);  // bounded above by zero

  StandardResult out;
  if (tab.value() < 0) {
    out.status = LPStatus::Infeasible;
    return out;
  }
  tab.expel_artificials();

  std::vector<Rational> phase2(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  tab.set_objective(phase2);
  std::size_t enter = 0;
  if (!tab.optimize(n, &enter)) {
    out.status = LPStatus::Unbounded;
    out.y = tab.solution();
    out.ray = tab.ray(enter);
    return out;
  }
  out.status = LPStatus::Optimal;
  out.y = tab.solution();
  out.value = tab.value();
  return out;
}

}  // namespace detail

namespace {

// Variables (x⁺, x⁻, s) with a_i·x⁺ − a_i·x⁻ − s_i = −a0_i.
struct SplitForm {
  QMatrix a;
  std::vector<Rational> b;
};

SplitForm split_form(const Polyhedron& k) {
  const std::size_t n = k.n;
  const std::size_t m = k.constraints.size();
  SplitForm s{QMatrix(m, 2 * n + m), std::vector<Rational>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    const auto& f = k.constraints[i];
    for (std::size_t j = 0; j < n; ++j) {
      s.a(i, j) = f.linear[j];
      s.a(i, n + j) = -f.linear[j];
    }
    s.a(i, 2 * n + i) = -1;
    s.b[i] = -f.a0;
  }
  return s;
}

PencilPoint recover_x(const std::vector<Rational>& y, std::size_t n) {
  PencilPoint x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = y[j] - y[n + j];
  return x;
}

// Non-negative (c0, c) with c0 + Σ c_i f_i == target, smallest c0 first and
// then smallest Σ c_i. nullopt when no such combination exists.
std::optional<FarkasCertificate> cone_combination(const Polyhedron& k, const AffineFunctional& target) {
  const std::size_t n = k.n;
  const std::size_t m = k.constraints.size();
  QMatrix a(n + 1, m + 1);
  std::vector<Rational> b(n + 1);
  a(0, 0) = 1;
  for (std::size_t i = 0; i < m; ++i) {
    a(0, i + 1) = k.constraints[i].a0;
    for (std::size_t j = 0; j < n; ++j) a(j + 1, i + 1) = k.constraints[i].linear[j];
  }
  b[0] = target.a0;
  for (std::size_t j = 0; j < n; ++j) b[j + 1] = target.linear[j];

  std::vector<Rational> c(m + 1, Rational(0));
  c[0] = -1;
  auto first = detail::solve_standard(a, b, c);
  if (first.status != LPStatus::Optimal) return std::nullopt;
  const Rational c0 = first.y[0];

  QMatrix a2(n + 2, m + 1);
  a2.set_block(0, 0, a);
  a2(n + 1, 0) = 1;
  std::vector<Rational> b2 = b;
  b2.push_back(c0);
  std::vector<Rational> c2(m + 1, Rational(-1));
  c2[0] = 0;
  auto second = detail::solve_standard(a2, b2, c2);
  if (second.status != LPStatus::Optimal) return std::nullopt;
  FarkasCertificate cert;
  cert.c0 = second.y[0];
  cert.coeffs.assign(second.y.begin() + 1, second.y.end());
  return cert;
}

}  // namespace

std::optional<PencilPoint> feasible_point(const Polyhedron& k) {
  SplitForm s = split_form(k);
  auto res = detail::solve_standard(s.a, s.b, std::vector<Rational>(s.a.cols(), Rational(0)));
  if (res.status == LPStatus::Infeasible) return std::nullopt;
  return recover_x(res.y, k.n);
}

LPResult lp_solve(const AffineFunctional& objective, const Polyhedron& k, Sense sense) {
  if (objective.n() != k.n) throw DimensionMismatch("lp_solve: objective dimension");
  const std::size_t n = k.n;
  SplitForm s = split_form(k);
  const Rational sg = sense == Sense::Maximize ? 1 : -1;
  std::vector<Rational> c(s.a.cols(), Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = sg * objective.linear[j];
    c[n + j] = -sg * objective.linear[j];
  }
  auto res = detail::solve_standard(s.a, s.b, c);

  LPResult out;
  out.status = res.status;
  if (res.status == LPStatus::Infeasible) {
    out.infeasibility = cone_contains_minus_one(k);
    return out;
  }
  out.point = recover_x(res.y, n);
  if (res.status == LPStatus::Unbounded) {
    out.direction = recover_x(res.ray, n);
    return out;
  }
  out.value = objective(out.point);

  // Duals: objective − value == ∓ Σ y_i f_i with y ≥ 0.
  AffineFunctional target = objective - AffineFunctional::constant(n, out.value);
  if (sense == Sense::Maximize) target *= Rational(-1);
  auto duals = cone_combination(k, target);
  if (!duals || duals->c0 != 0) throw Error("lp_solve: dual multipliers not found (internal error)");
  out.duals = duals->coeffs;
  return out;
}

FarkasCertificate farkas_certificate(const Polyhedron& k, const AffineFunctional& f) {
  if (f.n() != k.n) throw DimensionMismatch("farkas_certificate: dimension");
  auto low = lp_solve(f, k, Sense::Minimize);
  if (low.status == LPStatus::Infeasible) throw EmptyRegion("farkas_certificate: region is empty");
  if (low.status == LPStatus::Unbounded) {
    // Walk along the ray until f reaches −1.
    Rational slope = f.slope(low.direction);
    Rational t = (f(low.point) + 1) / (-slope);
    if (t < 0) t = 0;
    PencilPoint w = low.point;
    for (std::size_t j = 0; j < w.size(); ++j) w[j] += t * low.direction[j];
    throw NotNonnegative("functional is unbounded below on the region", point_string(w));
  }
  if (low.value < 0) throw NotNonnegative("functional is negative on the region", point_string(low.point));
  auto cert = cone_combination(k, f);
  if (!cert) throw Error("farkas_certificate: no cone combination found (internal error)");
  return *cert;
}

FarkasCertificate cone_contains_minus_one(const Polyhedron& k) {
  if (feasible_point(k)) throw NotEmpty("cone_contains_minus_one: region is not empty");
  auto cert = cone_combination(k, AffineFunctional::constant(k.n, Rational(-1)));
  if (!cert) throw Error("cone_contains_minus_one: no certificate found (internal error)");
  return *cert;
}

}  // namespace spectra
