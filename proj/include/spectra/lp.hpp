#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "spectra/affine.hpp"
#include "spectra/matrix.hpp"

namespace spectra {

/// { x ∈ Rⁿ : f_i(x) ≥ 0 for every constraint f_i }.
struct Polyhedron {
  std::size_t n = 0;
  std::vector<AffineFunctional> constraints;

  Polyhedron() = default;
  Polyhedron(std::size_t dim, std::vector<AffineFunctional> fs);

  bool contains(const PencilPoint& x) const;
  Polyhedron without(std::size_t index) const;
};

/// f == c0 + Σ coeffs[i]·f_i with every coefficient non-negative.
struct FarkasCertificate {
  Rational c0;
  std::vector<Rational> coeffs;
};

/// Exact check of the polynomial identity and the sign conditions.
bool certifies(const FarkasCertificate& cert, const Polyhedron& k, const AffineFunctional& f);

enum class LPStatus { Optimal, Unbounded, Infeasible };
enum class Sense { Maximize, Minimize };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  PencilPoint point;               // Optimal: an optimal basic solution
  Rational value;                  // Optimal: objective value
  std::vector<Rational> duals;     // Optimal: objective == value ∓ Σ duals_i·f_i
  std::vector<Rational> direction; // Unbounded: recession direction improving the objective
  FarkasCertificate infeasibility; // Infeasible: −1 == c0 + Σ c_i·f_i
};

/// Exact simplex (two phases, Bland's rule). For Maximize the duals satisfy
/// objective == value − Σ y_i f_i; for Minimize objective == value + Σ y_i f_i.
LPResult lp_solve(const AffineFunctional& objective, const Polyhedron& k, Sense sense);

/// Some point of K, or nothing when K is empty.
std::optional<PencilPoint> feasible_point(const Polyhedron& k);

/// Non-negative rational certificate of f ≥ 0 on K. Among all certificates
/// the one with smallest c0, then smallest Σ c_i, is returned.
/// Throws EmptyRegion when K is empty and NotNonnegative (witness point with
/// f < 0) when f is negative somewhere on K.
FarkasCertificate farkas_certificate(const Polyhedron& k, const AffineFunctional& f);

/// Certificate of −1 for an empty K; throws NotEmpty otherwise.
FarkasCertificate cone_contains_minus_one(const Polyhedron& k);

namespace detail {

/// maximize cᵀy subject to A y = b, y ≥ 0.
struct StandardResult {
  LPStatus status = LPStatus::Infeasible;
  std::vector<Rational> y;
  Rational value;
  std::vector<Rational> ray;  // Unbounded: A ray = 0, ray ≥ 0, cᵀray > 0
};

StandardResult solve_standard(const QMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c);

}  // namespace detail

}  // namespace spectra
