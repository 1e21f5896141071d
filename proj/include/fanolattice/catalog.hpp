#pragma once

#include "fanolattice/polytope.hpp"

#include <string>
#include <vector>

namespace fanolattice {

/// conv{e_1, ..., e_n, -(e_1 + ... + e_n)}.
LatticePolytope projective_space(std::size_t n);

/// conv(V(p) x 0 and 0 x V(q)), the fan of the product variety.
LatticePolytope product(const LatticePolytope& p, const LatticePolytope& q);

/// conv{+-e_1, ..., +-e_d, +-(e_1 + ... + e_d)}; d even.
LatticePolytope del_pezzo_polytope(std::size_t d);

/// Rays v_0..v_n with sum q_i v_i = 0, written in a Z-basis of the lattice
/// Z^{n+1} / Z q. The basis comes from the Hermite reduction U q = e_1: the
/// rays are the columns of U without their first row.
/// Needs n + 1 >= 2 positive weights, any n of which are coprime.
LatticePolytope weighted_projective(const std::vector<long>& weights);

struct CatalogEntry {
  std::string name;
  LatticePolytope polytope;
};

/// Products of projective spaces and del Pezzo polytopes V_k with total
/// dimension d, each named as in "P^1 x P^2", "V_2 x V_2", "(P^1)^4".
std::vector<CatalogEntry> catalog(std::size_t d);

}  // namespace fanolattice
