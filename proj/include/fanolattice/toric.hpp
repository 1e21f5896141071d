#pragma once

#include "fanolattice/polytope.hpp"

#include <cstddef>
#include <vector>

namespace fanolattice {

/// Face fan of a Fano polytope: one maximal cone per facet, given by the
/// indices of the vertices (rays) it contains.
struct FaceFan {
  LatticePolytope polytope;
  std::vector<std::vector<std::size_t>> max_cones;
};

struct ToricProfile {
  bool is_fano_polytope = false;
  bool is_simplicial = false;
  bool is_smooth = false;
  bool is_reflexive = false;
  bool is_terminal = false;
  std::size_t picard_rank = 0;  // only meaningful when simplicial
};

FaceFan face_fan(const LatticePolytope& p);

/// Every maximal cone has exactly n rays forming a basis of Z^n.
bool is_smooth(const FaceFan& fan);
bool is_smooth(const LatticePolytope& p);

/// Every facet at lattice distance one from the origin.
bool is_reflexive(const LatticePolytope& p);

/// The only lattice points are the vertices and the origin.
bool is_terminal(const LatticePolytope& p);

/// |V| - n; rejects non-simplicial polytopes with PolytopeError.
std::size_t picard_rank(const LatticePolytope& p);

ToricProfile toric_profile(const LatticePolytope& p);

}  // namespace fanolattice
