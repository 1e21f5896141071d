#include "fanolattice/primitive.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <unordered_set>

namespace fanolattice {

namespace {

using Mask = std::uint64_t;

Mask mask_of(std::span<const std::size_t> idx) {
  Mask m = 0;
  for (auto i : idx) m |= Mask{1} << i;
  return m;
}

std::vector<std::size_t> indices_of(Mask m) {
  std::vector<std::size_t> out;
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

void require_simplicial(const LatticePolytope& p, const char* what) {
  if (!p.is_simplicial())
    throw PolytopeError(PolytopeErrorKind::NonSimplicial, std::string(what) + " requires a simplicial polytope");
  if (p.vertex_count() > 64)
    throw PolytopeError(PolytopeErrorKind::NonSimplicial, std::string(what) + " supports at most 64 vertices");
}

}  // namespace

std::vector<PrimitiveCollection> primitive_collections(const LatticePolytope& p) {
  require_simplicial(p, "primitive_collections");
  std::unordered_set<Mask> faces;
  for (const auto& f : p.facets()) {
    const Mask full = mask_of(f.vertex_indices);
    // every subset of the facet, including the empty face
    for (Mask s = full;; s = (s - 1) & full) {
      faces.insert(s);
      if (s == 0) break;
    }
  }
  std::set<Mask> minimal;
  const std::size_t m = p.vertex_count();
  for (Mask face : faces) {
    for (std::size_t v = 0; v < m; ++v) {
      const Mask bit = Mask{1} << v;
      if (face & bit) continue;
      const Mask cand = face | bit;
      if (faces.count(cand)) continue;
      bool minimal_nonface = true;
      for (Mask rest = cand; rest && minimal_nonface; rest &= rest - 1) {
        const Mask drop = rest & (~rest + 1);
        if (!faces.count(cand & ~drop)) minimal_nonface = false;
      }
      if (minimal_nonface) minimal.insert(cand);
    }
  }
  std::vector<PrimitiveCollection> out;
  for (Mask c : minimal) out.push_back({indices_of(c)});
  std::sort(out.begin(), out.end());
  return out;
}

PrimitiveRelation primitive_relation(const LatticePolytope& p, const PrimitiveCollection& c) {
  require_simplicial(p, "primitive_relation");
  const std::size_t n = p.dim();
  PrimitiveRelation rel;
  rel.collection = c;
  IntVector s(n);
  for (auto i : c.indices)
    for (std::size_t j = 0; j < n; ++j) s[j] += p.vertex(i)[j];
  rel.degree = Integer(static_cast<unsigned long>(c.indices.size()));
  if (std::all_of(s.begin(), s.end(), [](const Integer& x) { return sgn(x) == 0; })) return rel;

  const RatVector target = to_rational(s);
  for (const auto& f : p.facets()) {
    std::vector<IntVector> cols;
    for (auto i : f.vertex_indices) cols.push_back(p.vertex(i));
    auto coeffs = rational_solve(to_rational(IntMatrix::from_columns(cols, n)), target);
    if (!coeffs) continue;
    if (std::any_of(coeffs->begin(), coeffs->end(), [](const Rational& x) { return sgn(x) < 0; })) continue;
    // Zero coefficients are dropped: the focus is the minimal cone.
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& b = (*coeffs)[k];
      if (sgn(b) == 0) continue;
      if (b.get_den() != 1)
        throw NotSmoothError("primitive relation of " + to_string(std::vector<Integer>(s)) +
                             " has a non-integral coefficient; the fan is not smooth");
      rel.focus.push_back(f.vertex_indices[k]);
      rel.coefficients.push_back(b.get_num());
      rel.degree -= b.get_num();
    }
    return rel;
  }
  throw InvariantViolation("primitive_relation: no maximal cone contains " + to_string(std::vector<Integer>(s)));
}

std::vector<PrimitiveCollection> trivial_focus_collections(const LatticePolytope& p) {
  std::vector<PrimitiveCollection> out;
  for (const auto& c : primitive_collections(p)) {
    IntVector s(p.dim());
    for (auto i : c.indices)
      for (std::size_t j = 0; j < p.dim(); ++j) s[j] += p.vertex(i)[j];
    if (std::all_of(s.begin(), s.end(), [](const Integer& x) { return sgn(x) == 0; })) out.push_back(c);
  }
  if (out.empty())
    throw InvariantViolation("no primitive collection with trivial focus (Batyrev existence violated)");
  return out;
}

bool violates_cone_condition(const LatticePolytope& p, std::span<const std::size_t> lhs,
                             std::span<const Integer> lhs_coeffs, std::span<const std::size_t> rhs,
                             std::span<const Integer> rhs_coeffs) {
  if (lhs.size() != lhs_coeffs.size() || rhs.size() != rhs_coeffs.size())
    throw std::invalid_argument("violates_cone_condition: index and coefficient lists differ in length");
  const std::size_t n = p.dim();
  IntVector balance(n);
  Integer lhs_total = 0, rhs_total = 0;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    if (sgn(lhs_coeffs[k]) <= 0) throw std::invalid_argument("violates_cone_condition: coefficients must be positive");
    lhs_total += lhs_coeffs[k];
    for (std::size_t j = 0; j < n; ++j) balance[j] += lhs_coeffs[k] * p.vertex(lhs[k])[j];
  }
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    if (sgn(rhs_coeffs[k]) <= 0) throw std::invalid_argument("violates_cone_condition: coefficients must be positive");
    rhs_total += rhs_coeffs[k];
    for (std::size_t j = 0; j < n; ++j) balance[j] -= rhs_coeffs[k] * p.vertex(rhs[k])[j];
  }
  if (std::any_of(balance.begin(), balance.end(), [](const Integer& x) { return sgn(x) != 0; }))
    throw std::invalid_argument("violates_cone_condition: the relation does not hold");
  if (lhs_total < rhs_total)
    throw std::invalid_argument("violates_cone_condition: left coefficient sum is smaller than the right");
  return spans_face(p, lhs);
}

}  // namespace fanolattice
