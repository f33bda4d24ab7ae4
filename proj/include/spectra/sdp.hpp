#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectra/certificate.hpp"
#include "spectra/gram.hpp"
#include "spectra/pencil.hpp"

namespace spectra {

enum class SearchStatus { Feasible, Infeasible, Unknown };

std::string to_string(SearchStatus s);

struct SearchOptions {
  /// Numeric verification tolerance for returned certificates.
  double tol = 1e-8;
  std::size_t max_iterations = 20000;
  /// Largest denominator tried when rounding to an exact certificate.
  std::int64_t denominator_bound = 1000000;
  bool rationalize = true;
};

/// Exact chain for the fixed unbounded instance with constant factors.
struct AmGmChain {
  /// The nine coefficient equations, entry by entry.
  std::vector<std::string> equations;
  Rational sum_p_squared;   // Σ (P_i^{(j)})²
  Rational sum_r_squared;   // Σ (R_i^{(j)})²
  Rational sum_pr;          // Σ P_i^{(j)} R_i^{(j)}
  /// (Σ P² + Σ R²)/2, which must dominate Σ PR.
  Rational mean;
  /// det(L2) == det_constant + det_linear·f2 + det_product·f1·f3 with f the
  /// diagonal entries of L1; checked exactly.
  Rational det_constant;
  Rational det_linear;
  Rational det_product;
  bool det_identity_holds = false;
};

/// Infeasibility proof for a degree-D search: exact facial-reduction steps,
/// then a functional φ that is non-negative on everything the certificate
/// shape can produce but negative on L2.
struct RefutationReport {
  unsigned degree = 0;
  SearchStatus status = SearchStatus::Unknown;
  std::vector<CoefficientFunctional> reduction_steps;
  CoefficientFunctional witness;
  /// φ(L2).
  Rational witness_value;
  /// Whether every step and the witness were re-checked exactly.
  bool exact = false;
  std::vector<std::string> trace;
  std::optional<AmGmChain> chain;
};

struct SearchResult {
  SearchStatus status = SearchStatus::Unknown;
  unsigned degree = 0;
  std::optional<NumericCertificate> numeric;
  std::optional<ExactCertificate> exact;
  double residual = 0.0;
  std::optional<RefutationReport> refutation;
  /// Pencil Gram matrix found (the Choi matrix when degree == 0).
  Eigen::MatrixXd gram;
  std::size_t iterations = 0;
};

SearchResult constant_certificate_search(const LinearPencil& l1, const LinearPencil& l2, const SearchOptions& options = {});

SearchResult degree_bounded_search(const LinearPencil& l1, const LinearPencil& l2, unsigned degree,
                                   const SearchOptions& options = {});

struct ExtractedFactor {
  double weight = 0.0;
  DMatrix factor;
};

/// Eigen-decomposition of a d·ℓ Choi matrix: one d×ℓ factor per eigenvalue
/// above rank_tol·max(1, λ_max). Throws NotPSD below −rank_tol·max(1, λ_max).
std::vector<ExtractedFactor> extract_factors(const Eigen::MatrixXd& choi, std::size_t d, std::size_t l, double rank_tol = 1e-10);

/// Exact certificate from a numeric one: rounds the entries by continued
/// fractions, and failing that rounds the Gram matrices, projects them
/// exactly onto the affine constraints and factors them exactly. Nothing
/// when both fail.
std::optional<ExactCertificate> rationalize_certificate(const NumericCertificate& cert, const LinearPencil& l1,
                                                        const LinearPencil& l2,
                                                        std::int64_t denominator_bound = 1000000);

/// Re-checks a refutation by exact arithmetic against the Gram system of
/// its degree.
bool check_refutation(const LinearPencil& l1, const LinearPencil& l2, const RefutationReport& report);

/// The unbounded three-constraint instance and its fixed refutation.
LinearPencil example1_l1();
LinearPencil example1_l2();
/// The singleton 2×2 instance.
LinearPencil example2_l1();
LinearPencil example2_l2();

bool is_example1(const LinearPencil& l1, const LinearPencil& l2);
bool is_example2(const LinearPencil& l1, const LinearPencil& l2);

RefutationReport refute_example1();

/// Degree-D search with the fixed instances routed to their exact refuters.
SearchResult refute(const LinearPencil& l1, const LinearPencil& l2, unsigned degree, const SearchOptions& options = {});

}  // namespace spectra
