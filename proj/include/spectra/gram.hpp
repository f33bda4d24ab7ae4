#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spectra/certificate.hpp"
#include "spectra/pencil.hpp"
#include "spectra/polynomial.hpp"

namespace spectra {

/// Gram variables of a degree-D certificate search. The pencil Gram matrix G
/// is indexed by (α, a, p) with α a monomial of degree ≤ D, a < d, p < ℓ, and
/// equals Σ_k vec(B_k)vec(B_k)ᵀ; the sos Gram matrix Q is indexed by (α, p).
/// For D = 0, G is the Choi matrix with ℓ×ℓ blocks G_ab.
enum class GramBlock { Pencil = 0, Sos = 1 };

struct GramTerm {
  GramBlock block;
  std::size_t u = 0;
  std::size_t v = 0;
  Rational coef;
};

/// Σ coef·X[u][v] == rhs: entry (p, q), p ≤ q, of the coefficient of x^γ.
struct GramRow {
  Monomial gamma;
  std::size_t p = 0;
  std::size_t q = 0;
  std::vector<GramTerm> terms;
  Rational rhs;
};

struct GramSystem {
  std::size_t d = 0;
  std::size_t l = 0;
  std::size_t n = 0;
  unsigned degree = 0;
  std::vector<Monomial> basis;
  std::vector<GramRow> rows;

  std::size_t g_size() const { return basis.size() * d * l; }
  std::size_t q_size() const { return basis.size() * l; }
  std::size_t g_index(std::size_t k, std::size_t a, std::size_t p) const { return (k * d + a) * l + p; }
  std::size_t q_index(std::size_t k, std::size_t p) const { return k * l + p; }
  std::size_t block_size(GramBlock b) const { return b == GramBlock::Pencil ? g_size() : q_size(); }

  /// "G[x1; 2, 1]" style label (1-based a, p).
  std::string label(GramBlock b, std::size_t index) const;
  /// "x1^2" style label of a monomial.
  static std::string monomial_label(const Monomial& m);
};

GramSystem build_gram_system(const LinearPencil& l1, const LinearPencil& l2, unsigned degree);

/// Multipliers y_r on the rows of a Gram system.
using RowFunctional = std::vector<Rational>;

/// Σ_r y_r·(row functional) as symmetric matrices on G and Q.
struct AdjointImage {
  QMatrix g;
  QMatrix q;
};

AdjointImage adjoint(const GramSystem& sys, const RowFunctional& y);

Rational pair_rhs(const GramSystem& sys, const RowFunctional& y);

/// Indices that every PSD solution must leave zero.
struct LiveSet {
  std::vector<bool> g;
  std::vector<bool> q;

  std::vector<std::size_t> indices(GramBlock b) const;
  bool live(GramBlock b, std::size_t i) const { return b == GramBlock::Pencil ? g.at(i) : q.at(i); }
};

LiveSet all_live(const GramSystem& sys);

/// Exact facial reduction by single rows: a diagonal-entry row with zero
/// right-hand side whose live terms are diagonal with one common sign forces
/// those entries (and their rows and columns) to vanish. An exhausted row
/// with a nonzero right-hand side is a contradiction.
struct FacialReduction {
  LiveSet live;
  /// One single-row functional per reduction step, then optionally the
  /// contradiction.
  std::vector<RowFunctional> steps;
  std::optional<RowFunctional> contradiction;
  std::vector<std::string> trace;
};

FacialReduction facial_reduction(const GramSystem& sys);

/// Adjoint image restricted to the live indices.
AdjointImage restrict(const AdjointImage& image, const LiveSet& live);

/// Replays reduction steps: each must be PSD on the current live set with
/// zero pairing; the positive diagonal support of its adjoint is removed.
/// Returns the resulting live set, or nullopt when a step is invalid.
std::optional<LiveSet> replay_reduction(const GramSystem& sys, const std::vector<RowFunctional>& steps);

/// Exact separation on a live set: adjoint PSD there and pairing < 0.
bool separates(const GramSystem& sys, const LiveSet& live, const RowFunctional& y);

/// Functional on L2's coefficient space: φ(R) = Σ_γ tr(R_γ·Y_γ).
using CoefficientFunctional = std::map<Monomial, QMatrix>;

CoefficientFunctional to_coefficient_functional(const GramSystem& sys, const RowFunctional& y);
RowFunctional to_row_functional(const GramSystem& sys, const CoefficientFunctional& f);

/// Row with the given key, if present.
std::optional<std::size_t> find_row(const GramSystem& sys, const Monomial& gamma, std::size_t p, std::size_t q);

/// Gram matrices of a certificate of degree ≤ sys.degree (numeric).
void certificate_gram(const GramSystem& sys, const NumericCertificate& cert, Eigen::MatrixXd* g, Eigen::MatrixXd* q);

/// Factors read off Gram vectors: v indexed like G gives a d×ℓ polynomial.
QMatrixPoly pencil_factor(const GramSystem& sys, const QVector& v);
QMatrixPoly sos_factor(const GramSystem& sys, const QVector& v);
DMatrixPoly pencil_factor(const GramSystem& sys, const Eigen::VectorXd& v);
DMatrixPoly sos_factor(const GramSystem& sys, const Eigen::VectorXd& v);

}  // namespace spectra
