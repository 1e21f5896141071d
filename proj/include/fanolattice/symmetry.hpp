#pragma once

#include "fanolattice/errors.hpp"
#include "fanolattice/polytope.hpp"
#include "fanolattice/primitive.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

namespace fanolattice {

/// W together with the vertex permutation it induces: W * v_i = v_{perm[i]}.
struct AutElement {
  IntMatrix matrix;
  std::vector<std::size_t> perm;
};

/// Aut of a lattice polytope inside GL(n, Z).
///
/// `generators` is a subset with the same vertex orbits and the same fixed
/// space as the whole group (every element that would merge two orbits or
/// cut the fixed space is kept). `elements` holds the whole group when
/// `complete`; very large groups only keep the generators.
struct LatticeAutGroup {
  std::vector<AutElement> elements;
  std::vector<AutElement> generators;
  std::uint64_t order = 0;
  bool complete = false;
};

struct AutSearchOptions {
  /// Fingerprint and incidence pruning. Off means every injective tuple of
  /// vertices is tried, which is only feasible for small inputs.
  bool prune = true;
  /// Above this order only generators are stored.
  std::size_t store_limit = 100000;
};

LatticeAutGroup automorphism_group(const LatticePolytope& p, const AutSearchOptions& opts = {});

/// Builds a group record from an explicit element list (for subgroups).
LatticeAutGroup group_from_elements(std::vector<AutElement> elements);

/// Sorted multiset over all facets F of (<u_F, v>, c_F, profile of F), where
/// the profile is the sorted list of <u_F, w> over every vertex w. The plain
/// pairing multiset alone does not separate C and D in Bl_1 P^2.
using VertexFingerprint = std::vector<std::tuple<Integer, Rational, std::vector<Integer>>>;
VertexFingerprint vertex_fingerprint(const LatticePolytope& p, std::size_t i);

struct OrbitData {
  std::vector<std::vector<std::size_t>> orbit_partition;  // each orbit sorted; orbits by least element
  std::size_t t = 0;
  std::size_t k = 0;
  long invariant_ns_dim = 0;  // t - k
};

OrbitData orbit_data(const LatticePolytope& p, const LatticeAutGroup& g);

/// t - k == 1 for the full automorphism group. Smooth input only.
bool is_fibre_like(const LatticePolytope& p);
bool is_fibre_like(const LatticePolytope& p, const LatticeAutGroup& g);

struct BurnsideReport {
  std::size_t t_orbits = 0;
  Rational t_average;  // mean number of fixed vertices
  std::size_t k_fixed = 0;
  Rational k_average;       // mean trace of W
  Rational k_dual_average;  // mean trace of W^{-T}
  std::size_t k_dual_fixed = 0;
  bool ok = false;
};

/// Needs the complete element list; throws std::invalid_argument otherwise.
BurnsideReport burnside_report(const LatticeAutGroup& g);
bool burnside_check(const LatticeAutGroup& g);

/// Every union of k orbits lies in a proper face. Simplicial input only.
bool orbit_unions_in_faces(const LatticePolytope& p, const OrbitData& od);

/// Looks for a trivial-focus primitive collection whose orbit under g
/// consists of pairwise disjoint sets covering all vertices; returns that
/// orbit. When g is incomplete the orbit is taken under the generators.
std::optional<std::vector<PrimitiveCollection>> disjoint_collection_orbit(const LatticePolytope& p,
                                                                          const LatticeAutGroup& g);

}  // namespace fanolattice
