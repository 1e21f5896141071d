#pragma once

#include "fanolattice/errors.hpp"
#include "fanolattice/polytope.hpp"

#include <cstddef>
#include <vector>

namespace fanolattice {

/// A minimal set of rays that spans no cone of the face fan.
struct PrimitiveCollection {
  std::vector<std::size_t> indices;  // sorted

  friend auto operator<=>(const PrimitiveCollection&, const PrimitiveCollection&) = default;
};

/// sum(collection) = sum_i coefficients[i] * vertex(focus[i]), where focus
/// spans the smallest cone containing the left-hand side.
struct PrimitiveRelation {
  PrimitiveCollection collection;
  std::vector<std::size_t> focus;  // sorted; empty when the collection sums to zero
  std::vector<Integer> coefficients;
  Integer degree;  // |collection| - sum(coefficients)
};

/// Minimal non-faces of the boundary complex, in lexicographic order.
/// Requires a simplicial polytope.
std::vector<PrimitiveCollection> primitive_collections(const LatticePolytope& p);

/// Throws NotSmoothError if the coefficients in the focus are not positive
/// integers (which cannot happen for a smooth fan).
PrimitiveRelation primitive_relation(const LatticePolytope& p, const PrimitiveCollection& c);

/// Collections whose rays sum to zero. For smooth Fano input this is never
/// empty; an empty result raises InvariantViolation.
std::vector<PrimitiveCollection> trivial_focus_collections(const LatticePolytope& p);

/// For a relation sum a_i x_i = sum b_j y_j among vertices, with positive
/// integer coefficients and sum a_i >= sum b_j, reports whether {x_i} spans
/// a cone. For a Fano fan it never does, so true means something is broken.
/// Throws std::invalid_argument if the relation does not hold or the
/// coefficient condition fails.
bool violates_cone_condition(const LatticePolytope& p, std::span<const std::size_t> lhs,
                             std::span<const Integer> lhs_coeffs, std::span<const std::size_t> rhs,
                             std::span<const Integer> rhs_coeffs);

}  // namespace fanolattice
