#pragma once

#include "fanolattice/polytope.hpp"
#include "fanolattice/symmetry.hpp"

namespace fanolattice {

/// Barycentre test for Gorenstein toric Fano varieties. `is_zero` only
/// decides K-stability when `applicable` (the polytope is reflexive).
struct KStabilityVerdict {
  RatVector barycentre;
  bool is_zero = false;
  bool applicable = false;
};

KStabilityVerdict k_stability(const LatticePolytope& p);

/// Fibre-like implies barycentre zero. False means a counterexample (or a bug)
/// and should be reported with the polytope.
bool main_theorem_check(const LatticePolytope& p);
bool main_theorem_check(const LatticePolytope& p, const LatticeAutGroup& g);

}  // namespace fanolattice
