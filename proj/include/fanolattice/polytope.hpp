#pragma once

#include "fanolattice/exact_linalg.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fanolattice {

enum class PolytopeErrorKind {
  DimensionMismatch,
  TooFewVertices,
  NonPrimitiveVertex,
  DuplicateVertex,
  Degenerate,
  OriginNotInterior,
  NotAVertex,
  NonSimplicial,
};

std::string to_string(PolytopeErrorKind kind);

class PolytopeError : public std::runtime_error {
 public:
  PolytopeError(PolytopeErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  PolytopeErrorKind kind() const { return kind_; }

 private:
  PolytopeErrorKind kind_;
};

/// A facet {x : <normal, x> = offset}. `normal` is primitive and points
/// outwards; every other vertex satisfies <normal, v> < offset.
struct Facet {
  std::vector<std::size_t> vertex_indices;  // sorted
  IntVector normal;
  Rational offset;
};

/// Facet of conv(points) for a full-dimensional integer point set, with an
/// integral offset. Used internally by the hull and exposed for testing.
struct HullFacet {
  std::vector<std::size_t> point_indices;  // sorted; every input point on the hyperplane
  IntVector normal;
  Integer offset;
};

/// Exact facet enumeration of conv(points) by gift wrapping across ridges.
/// Ridges of non-simplicial facets are found recursively in one dimension
/// less. Throws PolytopeError(Degenerate) unless the points affinely span.
std::vector<HullFacet> convex_hull_facets(std::span<const IntVector> points);

/// Full-dimensional lattice polytope with primitive vertices and the origin in
/// its interior. Immutable; copies share the facet data.
class LatticePolytope {
 public:
  explicit LatticePolytope(std::vector<IntVector> vertices);

  std::size_t dim() const { return data_->dim; }
  std::size_t vertex_count() const { return data_->vertices.size(); }
  const std::vector<IntVector>& vertices() const { return data_->vertices; }
  const IntVector& vertex(std::size_t i) const { return data_->vertices[i]; }
  const std::vector<Facet>& facets() const { return data_->facets; }
  bool is_simplicial() const { return data_->simplicial; }

  /// W·P for a unimodular W; vertex order is preserved.
  LatticePolytope transformed(const IntMatrix& w) const;

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.vertices() == b.vertices();
  }

 private:
  struct Data {
    std::size_t dim = 0;
    std::vector<IntVector> vertices;
    std::vector<Facet> facets;
    bool simplicial = false;
  };
  std::shared_ptr<const Data> data_;
};

struct RationalPolytope {
  std::size_t dim = 0;
  std::vector<RatVector> vertices;
};

const std::vector<Facet>& facets(const LatticePolytope& p);

/// True iff the vertex set `subset` is contained in a single facet, i.e. spans
/// a cone of the face fan. Only defined for simplicial polytopes.
bool spans_face(const LatticePolytope& p, std::span<const std::size_t> subset);

/// Vertices u/c for every facet (u, c).
RationalPolytope polar_dual(const LatticePolytope& p);
RationalPolytope polar_dual(const RationalPolytope& p);

/// All integer points of p (bounding-box scan through the facet inequalities),
/// in lexicographic order.
std::vector<IntVector> lattice_points(const LatticePolytope& p);

/// Which vertex a non-simplicial face is pulled from when it is triangulated.
enum class PullingOrder { FirstVertex, LastVertex };

/// Exact volume-weighted barycentre of p, from the cone-over-facets
/// triangulation. The result does not depend on `order`.
RatVector centroid(const LatticePolytope& p, PullingOrder order = PullingOrder::FirstVertex);

/// Euclidean volume of p, times dim!.
Integer normalized_volume(const LatticePolytope& p);

IntVector vertex_sum(const LatticePolytope& p);

}  // namespace fanolattice
