#include "fanolattice/toric.hpp"

#include <algorithm>
#include <set>

namespace fanolattice {

FaceFan face_fan(const LatticePolytope& p) {
  FaceFan fan{p, {}};
  for (const auto& f : p.facets()) fan.max_cones.push_back(f.vertex_indices);
  return fan;
}

bool is_smooth(const FaceFan& fan) {
  const auto& p = fan.polytope;
  const std::size_t n = p.dim();
  for (const auto& cone : fan.max_cones) {
    if (cone.size() != n) return false;
    std::vector<IntVector> cols;
    for (auto i : cone) cols.push_back(p.vertex(i));
    if (!is_unimodular(IntMatrix::from_columns(cols, n))) return false;
  }
  return true;
}

bool is_smooth(const LatticePolytope& p) { return is_smooth(face_fan(p)); }

bool is_reflexive(const LatticePolytope& p) {
  return std::all_of(p.facets().begin(), p.facets().end(), [](const Facet& f) { return f.offset == 1; });
}

bool is_terminal(const LatticePolytope& p) {
  std::set<IntVector> expected(p.vertices().begin(), p.vertices().end());
  expected.insert(IntVector(p.dim()));
  auto pts = lattice_points(p);
  return std::set<IntVector>(pts.begin(), pts.end()) == expected;
}

std::size_t picard_rank(const LatticePolytope& p) {
  if (!p.is_simplicial())
    throw PolytopeError(PolytopeErrorKind::NonSimplicial, "picard_rank requires a simplicial polytope");
  return p.vertex_count() - p.dim();
}

ToricProfile toric_profile(const LatticePolytope& p) {
  ToricProfile t;
  t.is_fano_polytope = true;  // enforced by LatticePolytope
  t.is_simplicial = p.is_simplicial();
  t.is_smooth = is_smooth(p);
  t.is_reflexive = is_reflexive(p);
  t.is_terminal = is_terminal(p);
  t.picard_rank = t.is_simplicial ? picard_rank(p) : 0;
  return t;
}

}  // namespace fanolattice
