#pragma once

#include "fanolattice/catalog.hpp"
#include "fanolattice/kstability.hpp"
#include "fanolattice/polytope.hpp"
#include "fanolattice/symmetry.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fanolattice {

/// Representative of a polytope up to GL(n, Z) and vertex relabelling.
///
/// The vertices are written in the dual basis of a chosen facet basis B,
/// scaled by index = |det B| so they stay integral; `lattice` is the Hermite
/// form of the image of Z^n in those coordinates (empty when index is 1,
/// which covers every smooth polytope). `bytes` determines the class.
struct CanonicalForm {
  std::size_t dim = 0;
  std::size_t vertex_count = 0;
  Integer index = 1;
  IntMatrix lattice;
  std::vector<IntVector> vertices;  // sorted
  std::string bytes;
  std::string hash;  // 16 hex digits of SHA-256(bytes)

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.bytes == b.bytes; }
  friend std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
    if (auto c = a.dim <=> b.dim; c != 0) return c;
    if (auto c = a.vertex_count <=> b.vertex_count; c != 0) return c;
    return a.bytes <=> b.bytes;
  }
};

CanonicalForm canonical_form(const LatticePolytope& p);

/// Same as canonical_form for a polytope whose facets are already known
/// (used by the enumerator to skip the hull). `facets` must be exactly the
/// facets of conv(vertices).
CanonicalForm canonical_form(std::size_t dim, const std::vector<IntVector>& vertices, const std::vector<Facet>& facets);

/// The polytope with the canonical vertex coordinates; index must be 1.
LatticePolytope canonical_polytope(const CanonicalForm& cf);

struct EnumerationOptions {
  long bound = 0;                // coordinate bound of the candidate pool; 0 means max(2, d - 1)
  std::uint64_t node_limit = 0;  // 0 means unlimited
  unsigned jobs = 1;
};

struct EnumerationResult {
  std::size_t dim = 0;
  long bound = 0;
  std::vector<CanonicalForm> classes;  // sorted
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  bool complete = true;  // false when the node limit stopped the search
  std::optional<std::size_t> reference_count;
  /// "complete" (count matches the known total), "bound-limited" (no match
  /// or no reference) or "incomplete" (node limit hit).
  std::string status;
};

/// Known numbers of smooth Fano polytopes up to equivalence, d = 1..8.
std::optional<std::size_t> reference_smooth_fano_count(std::size_t d);

/// Smooth Fano d-polytopes, 2 <= d <= 6, searched from a special facet
/// placed on the standard simplex.
EnumerationResult enumerate_smooth_fano(std::size_t d, const EnumerationOptions& opts = {});

struct ClassificationRow {
  std::size_t dim = 0;
  std::size_t vertex_count = 0;
  std::size_t picard_rank = 0;
  std::uint64_t aut_order = 0;
  std::size_t t = 0;
  std::size_t k = 0;
  bool fibre_like = false;
  bool barycentre_zero = false;
  std::optional<std::string> catalog_name;
  std::optional<std::string> external_id;
  std::string hash;
};

struct SourceEntry {
  LatticePolytope polytope;
  std::optional<std::string> id;
};

/// Every derived quantity for one polytope.
struct AnalysisReport {
  std::size_t dim = 0;
  std::size_t vertex_count = 0;
  bool smooth = false;
  bool simplicial = false;
  bool reflexive = false;
  bool terminal = false;
  std::optional<std::size_t> picard_rank;
  std::uint64_t aut_order = 0;
  std::size_t t = 0;
  std::size_t k = 0;
  /// Only set for smooth input; for the rest t - k is not conclusive.
  std::optional<bool> fibre_like;
  RatVector barycentre;
  IntVector vertex_sum;
  bool barycentre_zero = false;
  bool k_stable_applicable = false;
  std::string canonical_hash;
  std::optional<std::string> catalog_name;
};

AnalysisReport analyze(const LatticePolytope& p);

/// Name of the catalog polytope with this canonical form, if any.
std::optional<std::string> catalog_name(const CanonicalForm& cf);

struct PropertyReport {
  bool smooth = false;
  bool main_theorem = true;        // fibre-like implies barycentre 0
  bool positive_degrees = true;    // every primitive relation has degree > 0
  bool trivial_focus_exists = true;
  bool orbit_bound = true;         // t - k >= 1
  bool burnside = true;
  bool burnside_checked = false;   // needs the full element list
  bool fibre_structure = true;     // for fibre-like input: disjoint covering orbit, vertex sum 0, k-orbit faces
  bool fibre_like = false;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Runs the structural checks on a smooth Fano polytope.
PropertyReport property_suite(const LatticePolytope& p);

struct ClassifyOptions {
  unsigned jobs = 1;
  /// Consulted before a row is computed; lets callers reuse stored results.
  std::function<std::optional<ClassificationRow>(const std::string& hash)> lookup;
};

/// One row per distinct class among the entries (all smooth, else
/// NotSmoothError), sorted by (dim, vertex_count, hash). The first entry of a
/// class supplies its external id.
std::vector<ClassificationRow> classify_all(const std::vector<SourceEntry>& source, const ClassifyOptions& opts = {});

/// The fibre-like rows of classify_all. `processed` receives the number of
/// distinct classes examined.
std::vector<ClassificationRow> classify_fibre_like(const std::vector<SourceEntry>& source,
                                                   std::size_t* processed = nullptr,
                                                   const ClassifyOptions& opts = {});

ClassificationRow classification_row(const LatticePolytope& p, const std::optional<std::string>& id = std::nullopt);

/// For an odd prime d: the fibre-like classes are exactly P^d and (P^1)^d.
/// Throws std::invalid_argument if d is not an odd prime.
bool conjecture_check(std::size_t d, const std::vector<LatticePolytope>& fibre_like_classes);

}  // namespace fanolattice
