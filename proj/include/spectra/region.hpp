#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spectra/lp.hpp"
#include "spectra/matrix.hpp"
#include "spectra/pencil.hpp"

namespace spectra {

enum class RegionKind { Empty, Singleton, Bounded, Unbounded };

std::string to_string(RegionKind kind);

/// base + span(directions).
struct AffineHull {
  PencilPoint base;
  std::vector<QVector> directions;
};

struct RegionClassification {
  RegionKind kind = RegionKind::Empty;
  std::size_t dim = 0;
  AffineHull affine_hull;
  /// Relative interior point; absent only for Empty.
  std::optional<PencilPoint> interior_point;
  /// Irredundant constraint indices.
  std::vector<std::size_t> facets;
  /// Constraints that vanish identically on the region.
  std::vector<std::size_t> implicit_equalities;
};

RegionClassification classify(const Polyhedron& k);

struct VertexSet {
  std::vector<PencilPoint> vertices;
  /// Extreme rays, scaled so the first nonzero coordinate is ±1. Lineality
  /// directions appear with both signs.
  std::vector<QVector> rays;
};

inline constexpr std::size_t kMaxVertexDimension = 4;
inline constexpr std::size_t kMaxVertexConstraints = 12;

/// Exhaustive enumeration over constraint subsets; throws TooLarge beyond
/// n = 4 or 12 constraints.
VertexSet vertices(const Polyhedron& k);

struct SimplexCheck {
  bool is_simplex = false;
  std::vector<std::size_t> facets;
};

SimplexCheck simplex_check(const Polyhedron& k);

struct NonnegResult {
  bool holds = true;
  /// Violating vertex or ray direction.
  std::optional<PencilPoint> witness;
  bool witness_is_ray = false;
};

/// L2 ⪰ 0 on K, decided at vertices and rays (λ_min of an affine matrix
/// function is concave). Throws TooLarge with vertices().
NonnegResult pencil_nonneg_on_region(const LinearPencil& l2, const Polyhedron& k);

/// L2 ≻ 0 on K: positive definite at every vertex, PSD along every ray.
NonnegResult pencil_positive_on_region(const LinearPencil& l2, const Polyhedron& k);

struct AlgebraCheck {
  bool closed = false;
  bool separates = false;
};

/// Whether the span of the diagonal matrices is closed under products, and
/// whether it separates coordinates. Throws NotDiagonal.
AlgebraCheck algebra_closure_check(const std::vector<QMatrix>& matrices);

/// Polyhedron of a diagonal pencil (its diagonal entries); throws NotDiagonal.
Polyhedron region_of(const LinearPencil& l1);

}  // namespace spectra
