#include "fanolattice/kstability.hpp"

#include "fanolattice/toric.hpp"

#include <algorithm>

namespace fanolattice {

KStabilityVerdict k_stability(const LatticePolytope& p) {
  KStabilityVerdict v;
  v.barycentre = centroid(p);
  v.is_zero = std::all_of(v.barycentre.begin(), v.barycentre.end(), [](const Rational& x) { return sgn(x) == 0; });
  v.applicable = is_reflexive(p);
  return v;
}

bool main_theorem_check(const LatticePolytope& p, const LatticeAutGroup& g) {
  if (!is_fibre_like(p, g)) return true;
  return k_stability(p).is_zero;
}

bool main_theorem_check(const LatticePolytope& p) { return main_theorem_check(p, automorphism_group(p)); }

}  // namespace fanolattice
