#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "spectra/certificate.hpp"
#include "spectra/errors.hpp"
#include "spectra/lp.hpp"
#include "spectra/pencil.hpp"
#include "spectra/sdp.hpp"

namespace spectra {

enum class MonicBackend { ExactScaled, ApproxMonic };

std::string to_string(MonicBackend b);

/// reduced == Cᵀ·L·C and L == Dmatᵀ·reduced·Dmat. The exact backend scales
/// the constant term to a positive diagonal (to 1 where the entry is a
/// rational square); the approximate one makes it the identity through an
/// eigen-decomposition, with the identities holding to 1e-10.
struct MonicReduction {
  LinearPencil reduced;
  QMatrix c;
  QMatrix dmat;
  MonicBackend backend = MonicBackend::ExactScaled;
};

/// Requires P0 ⪰ 0 and Im(P_i) ⊆ Im(P0) (checked exactly); NotInterior
/// otherwise. Exact backend when P0 is diagonal, approximate otherwise.
MonicReduction monic_reduce(const LinearPencil& l);

/// diag(x_i, −x_i) in n variables.
LinearPencil pm_pencil(std::size_t n, std::size_t i);

/// Certificate of A·x_i over diag(x_i, −x_i): one term per rank-one piece
/// of A, positive pieces on the +x_i slot and negative ones on −x_i.
ExactCertificate express_symmetric_via_pm(const QMatrix& a, std::size_t i, std::size_t n);

/// Certificate of diag(entries) over a diagonal L1, entry by entry from
/// scalar Farkas certificates over the diagonal of L1.
ExactCertificate diagonal_farkas_certificate(const LinearPencil& l1, const std::vector<AffineFunctional>& entries);

/// Certificate of L2 over a diagonal L1 with an empty region, from
/// 4a = (a+1)² − (a−1)²: sos term ((L2+I)/2)² and pencil terms carrying
/// ((L2−I)/2)² on the constraints of the infeasibility certificate.
ExactCertificate empty_region_certificate(const LinearPencil& l1, const LinearPencil& l2);

enum class EnginePath {
  Identity,
  EmptyRegion,
  Singleton,
  DiagonalBounded,
  LowerDimensional,
  OneVariableBounded,
  OneVariableHalfLine,
  OneVariableFullLine,
  Simplex,
  AlgebraSpan,
  SdpFallback
};

std::string to_string(EnginePath p);

struct EngineConfig {
  /// Degree cap for the fallback search.
  unsigned degree_cap = 2;
  /// Numeric verification tolerance.
  double tol = 1e-8;
  /// Strict positivity margin for approximate eigenvalue checks.
  double margin = 1e-6;
  std::int64_t denominator_bound = 1000000;
  std::size_t max_iterations = 20000;
};

/// Result of a constructive path. `exact` is present when every stage was
/// rational; `numeric` always mirrors the certificate and `report` is the
/// verification that was run before returning.
struct EngineCertificate {
  EnginePath path = EnginePath::SdpFallback;
  std::optional<ExactCertificate> exact;
  NumericCertificate numeric;
  VerificationReport report;

  bool is_exact() const { return exact.has_value(); }
};

/// No path produced a certificate. Carries the fallback search outcome.
class NoPathFound : public Error {
 public:
  NoPathFound(const std::string& what, SearchStatus status, std::optional<RefutationReport> refutation,
              std::vector<std::string> diagnostics)
      : Error(what), status_(status), refutation_(std::move(refutation)), diagnostics_(std::move(diagnostics)) {}
  SearchStatus status() const { return status_; }
  const std::optional<RefutationReport>& refutation() const { return refutation_; }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  SearchStatus status_;
  std::optional<RefutationReport> refutation_;
  std::vector<std::string> diagnostics_;
};

/// Diagonal L1 whose region is the single point a, with L2(a) ⪰ 0.
EngineCertificate certify_singleton(const LinearPencil& l1, const LinearPencil& l2, const EngineConfig& config = {});

/// Diagonal L1 with a bounded or empty region; L2 ≻ 0 on it when it has
/// positive dimension. Throws NotDiagonal, NotBounded, PositivityFailed.
EngineCertificate certify_diagonal_bounded(const LinearPencil& l1, const LinearPencil& l2, const EngineConfig& config = {});

/// The interval D_{L1}(1) of a one-variable pencil.
struct OneVariableInterval {
  bool has_interior = false;
  /// Endpoints; absent when the side is unbounded.
  std::optional<double> lower;
  std::optional<double> upper;
  /// Set when the endpoint was confirmed rational exactly.
  std::optional<Rational> lower_exact;
  std::optional<Rational> upper_exact;
  /// Rational point where the pencil is positive definite off its common
  /// kernel.
  Rational interior;
  /// Without interior: the single point of the interval, when confirmed
  /// exactly. Absent means empty or not confirmed.
  std::optional<Rational> point;
};

OneVariableInterval one_variable_interval(const LinearPencil& l1);

/// One-variable L1 with nonempty interior and L2 ⪰ 0 on the interval.
/// Throws NotOneVariable, NoInterior, PositivityFailed.
EngineCertificate certify_one_variable(const LinearPencil& l1, const LinearPencil& l2, const EngineConfig& config = {});

/// Diagonal L1 whose region is an n-simplex, L2 ⪰ 0 on it. Throws
/// NotSimplex, PositivityFailed.
EngineCertificate certify_simplex(const LinearPencil& l1, const LinearPencil& l2, const EngineConfig& config = {});

/// Constructive paths in fixed priority, then constant and degree-capped
/// search. Throws PositivityFailed when L2 fails on the region and
/// NoPathFound when nothing certifies.
EngineCertificate certify_auto(const LinearPencil& l1, const LinearPencil& l2, const EngineConfig& config = {});

}  // namespace spectra
