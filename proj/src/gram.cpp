#include "spectra/gram.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "spectra/exact_linalg.hpp"

namespace spectra {

namespace {

using RowKey = std::tuple<unsigned, Monomial, std::size_t, std::size_t>;
using TermKey = std::tuple<int, std::size_t, std::size_t>;

RowKey row_key(const Monomial& gamma, std::size_t p, std::size_t q) { return {degree(gamma), gamma, p, q}; }

std::string coefficient_label(const Monomial& gamma) { return "coefficient of " + GramSystem::monomial_label(gamma); }

std::string entry_label(const GramRow& r) {
  return coefficient_label(r.gamma) + ", entry (" + std::to_string(r.p + 1) + "," + std::to_string(r.q + 1) + ")";
}

QMatrix select(const QMatrix& m, const std::vector<std::size_t>& idx) {
  QMatrix out(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
  return out;
}

bool is_live(const LiveSet& live, const GramTerm& t) { return live.live(t.block, t.u) && live.live(t.block, t.v); }

void kill(LiveSet& live, GramBlock b, std::size_t i) {
  if (b == GramBlock::Pencil) {
    live.g.at(i) = false;
  } else {
    live.q.at(i) = false;
  }
}

}  // namespace

std::string GramSystem::monomial_label(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i + 1);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string GramSystem::label(GramBlock b, std::size_t index) const {
  std::ostringstream os;
  if (b == GramBlock::Pencil) {
    const std::size_t p = index % l, a = (index / l) % d, k = index / (l * d);
    os << "G[" << monomial_label(basis.at(k)) << "; " << a + 1 << ", " << p + 1 << "]";
  } else {
    const std::size_t p = index % l, k = index / l;
    os << "Q[" << monomial_label(basis.at(k)) << "; " << p + 1 << "]";
  }
  return os.str();
}

GramSystem build_gram_system(const LinearPencil& l1, const LinearPencil& l2, unsigned degree) {
  if (l1.n() != l2.n()) throw DimensionMismatch("L1 and L2 have different numbers of variables");
  GramSystem sys;
  sys.d = l1.d();
  sys.l = l2.d();
  sys.n = l1.n();
  sys.degree = degree;
  sys.basis = monomials_up_to(sys.n, degree);
  const std::size_t nb = sys.basis.size();

  std::map<RowKey, std::map<TermKey, Rational>> terms;
  std::map<RowKey, Rational> rhs;
  auto add = [&](const Monomial& gamma, std::size_t p, std::size_t q, GramBlock b, std::size_t u, std::size_t v, const Rational& c) {
    if (u > v) std::swap(u, v);
    Rational& slot = terms[row_key(gamma, p, q)][TermKey{static_cast<int>(b), u, v}];
    slot += c;
  };
  for (std::size_t i = 0; i <= sys.n; ++i) {
    const QMatrix& pi = l1.coeff(i);
    const Monomial shift = i == 0 ? Monomial(sys.n, 0) : unit_monomial(sys.n, i - 1);
    for (std::size_t ka = 0; ka < nb; ++ka)
      for (std::size_t kb = 0; kb < nb; ++kb) {
        const Monomial gamma = sys.basis[ka] + sys.basis[kb] + shift;
        for (std::size_t a = 0; a < sys.d; ++a)
          for (std::size_t b = 0; b < sys.d; ++b) {
            if (pi(a, b) == 0) continue;
            for (std::size_t p = 0; p < sys.l; ++p)
              for (std::size_t q = p; q < sys.l; ++q)
                add(gamma, p, q, GramBlock::Pencil, sys.g_index(ka, a, p), sys.g_index(kb, b, q), pi(a, b));
          }
      }
  }
  for (std::size_t ka = 0; ka < nb; ++ka)
    for (std::size_t kb = 0; kb < nb; ++kb) {
      const Monomial gamma = sys.basis[ka] + sys.basis[kb];
      for (std::size_t p = 0; p < sys.l; ++p)
        for (std::size_t q = p; q < sys.l; ++q) add(gamma, p, q, GramBlock::Sos, sys.q_index(ka, p), sys.q_index(kb, q), Rational(1));
    }
  for (std::size_t i = 0; i <= sys.n; ++i) {
    const Monomial gamma = i == 0 ? Monomial(sys.n, 0) : unit_monomial(sys.n, i - 1);
    for (std::size_t p = 0; p < sys.l; ++p)
      for (std::size_t q = p; q < sys.l; ++q) {
        terms[row_key(gamma, p, q)];
        rhs[row_key(gamma, p, q)] = l2.coeff(i)(p, q);
      }
  }
  for (auto& [key, ts] : terms) {
    GramRow r;
    r.gamma = std::get<1>(key);
    r.p = std::get<2>(key);
    r.q = std::get<3>(key);
    for (auto& [tk, c] : ts) {
      if (c == 0) continue;
      r.terms.push_back({static_cast<GramBlock>(std::get<0>(tk)), std::get<1>(tk), std::get<2>(tk), c});
    }
    auto it = rhs.find(key);
    if (it != rhs.end()) r.rhs = it->second;
    sys.rows.push_back(std::move(r));
  }
  return sys;
}

AdjointImage adjoint(const GramSystem& sys, const RowFunctional& y) {
  if (y.size() != sys.rows.size()) throw DimensionMismatch("row functional length");
  AdjointImage out{QMatrix(sys.g_size(), sys.g_size()), QMatrix(sys.q_size(), sys.q_size())};
  for (std::size_t r = 0; r < y.size(); ++r) {
    if (y[r] == 0) continue;
    for (const GramTerm& t : sys.rows[r].terms) {
      QMatrix& m = t.block == GramBlock::Pencil ? out.g : out.q;
      if (t.u == t.v) {
        m(t.u, t.u) += y[r] * t.coef;
      } else {
        Rational half = y[r] * t.coef / 2;
        m(t.u, t.v) += half;
        m(t.v, t.u) += half;
      }
    }
  }
  return out;
}

Rational pair_rhs(const GramSystem& sys, const RowFunctional& y) {
  if (y.size() != sys.rows.size()) throw DimensionMismatch("row functional length");
  Rational s = 0;
  for (std::size_t r = 0; r < y.size(); ++r) s += y[r] * sys.rows[r].rhs;
  return s;
}

std::vector<std::size_t> LiveSet::indices(GramBlock b) const {
  const std::vector<bool>& flags = b == GramBlock::Pencil ? g : q;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i]) out.push_back(i);
  return out;
}

LiveSet all_live(const GramSystem& sys) { return {std::vector<bool>(sys.g_size(), true), std::vector<bool>(sys.q_size(), true)}; }

FacialReduction facial_reduction(const GramSystem& sys) {
  FacialReduction fr;
  fr.live = all_live(sys);
  auto unit = [&](std::size_t r, const Rational& s) {
    RowFunctional y(sys.rows.size(), Rational(0));
    y[r] = s;
    return y;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
      const GramRow& row = sys.rows[r];
      std::vector<const GramTerm*> live_terms;
      for (const GramTerm& t : row.terms)
        if (is_live(fr.live, t)) live_terms.push_back(&t);
      if (live_terms.empty()) {
        if (row.rhs != 0) {
          fr.contradiction = unit(r, Rational(-1) / row.rhs);
          fr.trace.push_back(entry_label(row) + ": every remaining term vanishes, but L2 has " + to_string(row.rhs));
          return fr;
        }
        continue;
      }
      if (row.p != row.q) continue;
      int s = 0;
      bool uniform = true;
      for (const GramTerm* t : live_terms) {
        const int ts = sign(t->coef);
        if (t->u != t->v || (s != 0 && ts != s)) {
          uniform = false;
          break;
        }
        s = ts;
      }
      if (!uniform) continue;
      std::string lhs;
      for (const GramTerm* t : live_terms) {
        if (!lhs.empty()) lhs += " + ";
        if (abs(t->coef) != 1) lhs += to_string(abs(t->coef)) + "*";
        lhs += sys.label(t->block, t->u);
      }
      if (row.rhs == 0) {
        for (const GramTerm* t : live_terms) kill(fr.live, t->block, t->u);
        fr.steps.push_back(unit(r, Rational(s)));
        fr.trace.push_back(entry_label(row) + ": " + (s > 0 ? "" : "-(") + lhs + (s > 0 ? "" : ")") +
                           " = 0 forces these diagonal Gram entries to vanish");
        changed = true;
      } else if (sign(row.rhs) != s) {
        fr.contradiction = unit(r, Rational(s) / abs(row.rhs));
        fr.trace.push_back(entry_label(row) + ": a sum of nonnegative diagonal Gram entries cannot equal " + to_string(row.rhs));
        return fr;
      }
    }
  }
  return fr;
}

AdjointImage restrict(const AdjointImage& image, const LiveSet& live) {
  return {select(image.g, live.indices(GramBlock::Pencil)), select(image.q, live.indices(GramBlock::Sos))};
}

std::optional<LiveSet> replay_reduction(const GramSystem& sys, const std::vector<RowFunctional>& steps) {
  LiveSet live = all_live(sys);
  for (const RowFunctional& y : steps) {
    if (pair_rhs(sys, y) != 0) return std::nullopt;
    const AdjointImage full = adjoint(sys, y);
    const AdjointImage img = restrict(full, live);
    if (!psd_check(img.g) || !psd_check(img.q)) return std::nullopt;
    for (std::size_t i = 0; i < sys.g_size(); ++i)
      if (live.g[i] && full.g(i, i) > 0) live.g[i] = false;
    for (std::size_t i = 0; i < sys.q_size(); ++i)
      if (live.q[i] && full.q(i, i) > 0) live.q[i] = false;
  }
  return live;
}

bool separates(const GramSystem& sys, const LiveSet& live, const RowFunctional& y) {
  if (pair_rhs(sys, y) >= 0) return false;
  const AdjointImage img = restrict(adjoint(sys, y), live);
  return psd_check(img.g) && psd_check(img.q);
}

CoefficientFunctional to_coefficient_functional(const GramSystem& sys, const RowFunctional& y) {
  CoefficientFunctional f;
  for (std::size_t r = 0; r < y.size(); ++r) {
    if (y[r] == 0) continue;
    const GramRow& row = sys.rows[r];
    auto it = f.find(row.gamma);
    if (it == f.end()) it = f.emplace(row.gamma, QMatrix(sys.l, sys.l)).first;
    if (row.p == row.q) {
      it->second(row.p, row.p) = y[r];
    } else {
      it->second(row.p, row.q) = y[r] / 2;
      it->second(row.q, row.p) = y[r] / 2;
    }
  }
  return f;
}

RowFunctional to_row_functional(const GramSystem& sys, const CoefficientFunctional& f) {
  RowFunctional y(sys.rows.size(), Rational(0));
  for (const auto& [gamma, m] : f) {
    if (m.rows() != sys.l || m.cols() != sys.l || gamma.size() != sys.n) throw DimensionMismatch("coefficient functional shape");
    for (std::size_t p = 0; p < sys.l; ++p)
      for (std::size_t q = p; q < sys.l; ++q) {
        const Rational v = p == q ? m(p, p) : Rational(m(p, q) + m(q, p));
        if (v == 0) continue;
        auto r = find_row(sys, gamma, p, q);
        if (!r) throw DimensionMismatch("functional names a coefficient outside the Gram system");
        y[*r] = v;
      }
  }
  return y;
}

std::optional<std::size_t> find_row(const GramSystem& sys, const Monomial& gamma, std::size_t p, std::size_t q) {
  const RowKey key = row_key(gamma, p, q);
  auto it = std::lower_bound(sys.rows.begin(), sys.rows.end(), key,
                             [](const GramRow& r, const RowKey& k) { return row_key(r.gamma, r.p, r.q) < k; });
  if (it == sys.rows.end() || row_key(it->gamma, it->p, it->q) != key) return std::nullopt;
  return static_cast<std::size_t>(it - sys.rows.begin());
}

void certificate_gram(const GramSystem& sys, const NumericCertificate& cert, Eigen::MatrixXd* g, Eigen::MatrixXd* q) {
  if (cert.l1_dim != sys.d || cert.l2_dim != sys.l || cert.n != sys.n) throw DimensionMismatch("certificate does not match the Gram system");
  if (cert.degree() > sys.degree) throw DimensionMismatch("certificate degree exceeds the Gram system degree");
  std::map<Monomial, std::size_t> pos;
  for (std::size_t k = 0; k < sys.basis.size(); ++k) pos[sys.basis[k]] = k;
  *g = Eigen::MatrixXd::Zero(sys.g_size(), sys.g_size());
  *q = Eigen::MatrixXd::Zero(sys.q_size(), sys.q_size());
  for (const auto& t : cert.pencil) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(sys.g_size());
    for (const auto& [m, c] : t.factor.terms())
      for (std::size_t a = 0; a < sys.d; ++a)
        for (std::size_t p = 0; p < sys.l; ++p) v(sys.g_index(pos.at(m), a, p)) = c(a, p);
    *g += t.weight * v * v.transpose();
  }
  for (const auto& t : cert.sos) {
    for (std::size_t r = 0; r < t.factor.rows(); ++r) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(sys.q_size());
      for (const auto& [m, c] : t.factor.terms())
        for (std::size_t p = 0; p < sys.l; ++p) v(sys.q_index(pos.at(m), p)) = c(r, p);
      *q += t.weight * v * v.transpose();
    }
  }
}

namespace {

template <typename T, typename V>
MatrixPoly<T> factor_from(const GramSystem& sys, const V& v, bool pencil) {
  const std::size_t rows = pencil ? sys.d : 1;
  MatrixPoly<T> out(rows, sys.l, sys.n);
  for (std::size_t k = 0; k < sys.basis.size(); ++k) {
    Matrix<T> c(rows, sys.l);
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t p = 0; p < sys.l; ++p) c(a, p) = v[static_cast<decltype(v.size())>(pencil ? sys.g_index(k, a, p) : sys.q_index(k, p))];
    out.add(sys.basis[k], c);
  }
  return out;
}

}  // namespace

QMatrixPoly pencil_factor(const GramSystem& sys, const QVector& v) { return factor_from<Rational>(sys, v, true); }
QMatrixPoly sos_factor(const GramSystem& sys, const QVector& v) { return factor_from<Rational>(sys, v, false); }
DMatrixPoly pencil_factor(const GramSystem& sys, const Eigen::VectorXd& v) { return factor_from<double>(sys, v, true); }
DMatrixPoly sos_factor(const GramSystem& sys, const Eigen::VectorXd& v) { return factor_from<double>(sys, v, false); }

}  // namespace spectra
