#include "fanolattice/polytope.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace fanolattice {

std::string to_string(PolytopeErrorKind kind) {
  switch (kind) {
    case PolytopeErrorKind::DimensionMismatch: return "dimension-mismatch";
    case PolytopeErrorKind::TooFewVertices: return "too-few-vertices";
    case PolytopeErrorKind::NonPrimitiveVertex: return "non-primitive-vertex";
    case PolytopeErrorKind::DuplicateVertex: return "duplicate-vertex";
    case PolytopeErrorKind::Degenerate: return "degenerate";
    case PolytopeErrorKind::OriginNotInterior: return "origin-not-interior";
    case PolytopeErrorKind::NotAVertex: return "not-a-vertex";
    case PolytopeErrorKind::NonSimplicial: return "non-simplicial";
  }
  return "unknown";
}

namespace {

using Points = std::span<const IntVector>;

// Affine functional (w, c): x -> <w, x> - c.
struct Affine {
  RatVector w;
  Rational c;
};

Rational evaluate(const Affine& f, const IntVector& p) {
  Rational s = -f.c;
  for (std::size_t i = 0; i < p.size(); ++i) s += f.w[i] * p[i];
  return s;
}

// Null space of the rows [p, -1] for p in `subset`: all affine functionals
// vanishing on the subset.
std::vector<Affine> vanishing_functionals(Points pts, std::span<const std::size_t> subset) {
  const std::size_t m = pts.front().size();
  RatMatrix rows(subset.size(), m + 1);
  for (std::size_t r = 0; r < subset.size(); ++r) {
    for (std::size_t j = 0; j < m; ++j) rows(r, j) = pts[subset[r]][j];
    rows(r, m) = -1;
  }
  std::vector<Affine> out;
  for (auto& v : nullspace(rows)) {
    Affine f;
    f.c = v[m];
    v.pop_back();
    f.w = std::move(v);
    out.push_back(std::move(f));
  }
  return out;
}

bool proportional(const Affine& a, const Affine& b) {
  RatMatrix m(2, a.w.size() + 1);
  for (std::size_t j = 0; j < a.w.size(); ++j) {
    m(0, j) = a.w[j];
    m(1, j) = b.w[j];
  }
  m(0, a.w.size()) = a.c;
  m(1, a.w.size()) = b.c;
  return rank(m) < 2;
}

// Scales the functional to a primitive integer normal with integral offset.
HullFacet normalize(const Affine& f, Points pts) {
  RatVector full = f.w;
  full.push_back(f.c);
  IntVector prim = primitive_direction(full);
  HullFacet h;
  h.offset = prim.back();
  prim.pop_back();
  h.normal = std::move(prim);
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (dot(h.normal, pts[i]) == h.offset) h.point_indices.push_back(i);
  return h;
}

// Rotates the supporting hyperplane `support` around the face where both
// `support` and `pivot` vanish, in the direction in which `pivot` increases,
// until it hits another point. `pivot` must be positive on some point.
HullFacet rotate(const Affine& support, const Affine& pivot, Points pts) {
  bool have = false;
  Rational t;
  for (const auto& p : pts) {
    Rational gain = evaluate(pivot, p);
    if (sgn(gain) <= 0) continue;
    Rational tp = -evaluate(support, p) / gain;
    if (!have || tp < t) {
      t = tp;
      have = true;
    }
  }
  if (!have) throw PolytopeError(PolytopeErrorKind::Degenerate, "hull: rotation found no point");
  Affine next = support;
  for (std::size_t j = 0; j < next.w.size(); ++j) next.w[j] += t * pivot.w[j];
  next.c += t * pivot.c;
  return normalize(next, pts);
}

Affine to_affine(const HullFacet& f) {
  Affine a;
  a.w = to_rational(f.normal);
  a.c = f.offset;
  return a;
}

std::size_t affine_rank(Points pts, std::span<const std::size_t> subset) {
  const std::size_t m = pts.front().size();
  RatMatrix rows(subset.size(), m + 1);
  for (std::size_t r = 0; r < subset.size(); ++r) {
    for (std::size_t j = 0; j < m; ++j) rows(r, j) = pts[subset[r]][j];
    rows(r, m) = 1;
  }
  return rank(rows);
}

HullFacet initial_facet(Points pts) {
  const std::size_t m = pts.front().size();
  Affine support;
  support.w.assign(m, Rational(0));
  support.w[0] = 1;
  support.c = pts.front()[0];
  for (const auto& p : pts)
    if (p[0] > support.c) support.c = p[0];
  HullFacet current = normalize(support, pts);
  while (true) {
    auto funcs = vanishing_functionals(pts, current.point_indices);
    Affine base = to_affine(current);
    if (funcs.size() <= 1) return current;
    const Affine* pick = nullptr;
    for (const auto& f : funcs)
      if (!proportional(f, base)) {
        pick = &f;
        break;
      }
    Affine pivot = *pick;
    bool positive = false;
    for (const auto& p : pts)
      if (sgn(evaluate(pivot, p)) > 0) positive = true;
    if (!positive) {
      for (auto& x : pivot.w) x = -x;
      pivot.c = -pivot.c;
    }
    current = rotate(base, pivot, pts);
  }
}

// Drops coordinate `skip`; injective on any hyperplane whose normal has a
// non-zero entry there.
std::vector<IntVector> project(Points pts, std::span<const std::size_t> subset, std::size_t skip) {
  std::vector<IntVector> out;
  out.reserve(subset.size());
  for (auto i : subset) {
    IntVector q;
    q.reserve(pts[i].size() - 1);
    for (std::size_t j = 0; j < pts[i].size(); ++j)
      if (j != skip) q.push_back(pts[i][j]);
    out.push_back(std::move(q));
  }
  return out;
}

std::size_t first_nonzero(const IntVector& v) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (sgn(v[j]) != 0) return j;
  return 0;
}

// Ridges of facet f as index sets into pts.
std::vector<std::vector<std::size_t>> ridges_of(Points pts, const HullFacet& f) {
  const std::size_t m = pts.front().size();
  const auto& idx = f.point_indices;
  std::vector<std::vector<std::size_t>> out;
  if (idx.size() == m) {
    for (std::size_t drop = 0; drop < m; ++drop) {
      std::vector<std::size_t> r;
      for (std::size_t i = 0; i < m; ++i)
        if (i != drop) r.push_back(idx[i]);
      out.push_back(std::move(r));
    }
    return out;
  }
  auto proj = project(pts, idx, first_nonzero(f.normal));
  for (const auto& sub : convex_hull_facets(proj)) {
    std::vector<std::size_t> r;
    for (auto k : sub.point_indices) r.push_back(idx[k]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<HullFacet> convex_hull_facets(Points pts) {
  if (pts.empty()) throw PolytopeError(PolytopeErrorKind::Degenerate, "hull: no points");
  const std::size_t m = pts.front().size();
  for (const auto& p : pts)
    if (p.size() != m) throw PolytopeError(PolytopeErrorKind::DimensionMismatch, "hull: mixed dimensions");
  std::vector<std::size_t> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  if (m == 0 || affine_rank(pts, all) != m + 1)
    throw PolytopeError(PolytopeErrorKind::Degenerate, "points do not affinely span the ambient space");

  if (m == 1) {
    Integer lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      if (p[0] < lo) lo = p[0];
      if (p[0] > hi) hi = p[0];
    }
    HullFacet low{{}, IntVector{Integer(-1)}, Integer(-lo)};
    HullFacet high{{}, IntVector{Integer(1)}, hi};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i][0] == lo) low.point_indices.push_back(i);
      if (pts[i][0] == hi) high.point_indices.push_back(i);
    }
    return {low, high};
  }

  std::vector<HullFacet> found;
  std::map<IntVector, std::size_t> by_normal;
  std::deque<std::size_t> queue;
  auto add = [&](HullFacet f) {
    if (by_normal.count(f.normal)) return;
    by_normal.emplace(f.normal, found.size());
    queue.push_back(found.size());
    found.push_back(std::move(f));
  };
  add(initial_facet(pts));
  while (!queue.empty()) {
    const std::size_t fi = queue.front();
    queue.pop_front();
    const HullFacet facet = found[fi];
    const Affine base = to_affine(facet);
    for (const auto& ridge : ridges_of(pts, facet)) {
      auto funcs = vanishing_functionals(pts, ridge);
      const Affine* pick = nullptr;
      for (const auto& f : funcs)
        if (!proportional(f, base)) {
          pick = &f;
          break;
        }
      Affine pivot = *pick;
      // Orient the pivot so the rest of the current facet stays feasible.
      for (auto i : facet.point_indices) {
        if (std::binary_search(ridge.begin(), ridge.end(), i)) continue;
        if (sgn(evaluate(pivot, pts[i])) > 0) {
          for (auto& x : pivot.w) x = -x;
          pivot.c = -pivot.c;
        }
        break;
      }
      // The pivot must be positive somewhere, otherwise the rotation never
      // reaches the neighbouring facet; tilt it away from `base` if needed.
      bool positive = false;
      std::size_t off = pts.size();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (sgn(evaluate(pivot, pts[i])) > 0) positive = true;
        if (off == pts.size() && sgn(evaluate(base, pts[i])) < 0) off = i;
      }
      if (!positive) {
        Rational k = evaluate(pivot, pts[off]) / evaluate(base, pts[off]) + 1;
        for (std::size_t j = 0; j < pivot.w.size(); ++j) pivot.w[j] -= k * base.w[j];
        pivot.c -= k * base.c;
      }
      add(rotate(base, pivot, pts));
    }
  }
  std::sort(found.begin(), found.end(),
            [](const HullFacet& a, const HullFacet& b) { return a.point_indices < b.point_indices; });
  return found;
}

LatticePolytope::LatticePolytope(std::vector<IntVector> vertices) {
  auto data = std::make_shared<Data>();
  if (vertices.empty()) throw PolytopeError(PolytopeErrorKind::TooFewVertices, "polytope has no vertices");
  data->dim = vertices.front().size();
  const std::size_t n = data->dim;
  if (n == 0) throw PolytopeError(PolytopeErrorKind::DimensionMismatch, "dimension must be positive");
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].size() != n)
      throw PolytopeError(PolytopeErrorKind::DimensionMismatch,
                          "vertex " + std::to_string(i) + " has " + std::to_string(vertices[i].size()) +
                              " coordinates, expected " + std::to_string(n));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (!is_primitive(vertices[i]))
      throw PolytopeError(PolytopeErrorKind::NonPrimitiveVertex,
                          "vertex " + std::to_string(i) + " " + to_string(vertices[i]) + " is not primitive");
  {
    std::map<IntVector, std::size_t> seen;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      auto [it, fresh] = seen.emplace(vertices[i], i);
      if (!fresh)
        throw PolytopeError(PolytopeErrorKind::DuplicateVertex,
                            "vertex " + std::to_string(i) + " duplicates vertex " + std::to_string(it->second));
    }
  }
  if (vertices.size() < n + 1)
    throw PolytopeError(PolytopeErrorKind::TooFewVertices, "a full-dimensional polytope needs at least dim+1 vertices");

  auto hull = convex_hull_facets(vertices);
  for (const auto& h : hull)
    if (sgn(h.offset) <= 0)
      throw PolytopeError(PolytopeErrorKind::OriginNotInterior,
                          "origin is not in the interior (facet normal " + to_string(h.normal) + ")");

  // A point is a vertex iff the normals of the facets through it span Q^n.
  std::vector<std::vector<std::size_t>> incident(vertices.size());
  for (std::size_t f = 0; f < hull.size(); ++f)
    for (auto i : hull[f].point_indices) incident[i].push_back(f);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    std::vector<IntVector> normals;
    for (auto f : incident[i]) normals.push_back(hull[f].normal);
    if (normals.size() < n || rank(IntMatrix::from_rows(normals, n)) < n)
      throw PolytopeError(PolytopeErrorKind::NotAVertex,
                          "point " + std::to_string(i) + " " + to_string(vertices[i]) + " is not a vertex");
  }

  data->simplicial = true;
  for (auto& h : hull) {
    if (h.point_indices.size() != n) data->simplicial = false;
    data->facets.push_back(Facet{std::move(h.point_indices), std::move(h.normal), Rational(h.offset)});
  }
  data->vertices = std::move(vertices);
  data_ = std::move(data);
}

LatticePolytope LatticePolytope::transformed(const IntMatrix& w) const {
  if (w.rows() != dim() || w.cols() != dim()) throw LinalgError("transformed: matrix size mismatch");
  if (!is_unimodular(w)) throw LinalgError("transformed: matrix is not unimodular");
  std::vector<IntVector> out;
  out.reserve(vertex_count());
  for (const auto& v : vertices()) out.push_back(matvec(w, v));
  return LatticePolytope(std::move(out));
}

const std::vector<Facet>& facets(const LatticePolytope& p) { return p.facets(); }

bool spans_face(const LatticePolytope& p, std::span<const std::size_t> subset) {
  if (!p.is_simplicial())
    throw PolytopeError(PolytopeErrorKind::NonSimplicial, "spans_face requires a simplicial polytope");
  for (auto i : subset)
    if (i >= p.vertex_count()) throw std::out_of_range("spans_face: vertex index out of range");
  for (const auto& f : p.facets()) {
    bool all = std::all_of(subset.begin(), subset.end(), [&](std::size_t i) {
      return std::binary_search(f.vertex_indices.begin(), f.vertex_indices.end(), i);
    });
    if (all) return true;
  }
  return false;
}

RationalPolytope polar_dual(const LatticePolytope& p) {
  RationalPolytope out;
  out.dim = p.dim();
  for (const auto& f : p.facets()) {
    RatVector v(p.dim());
    for (std::size_t j = 0; j < p.dim(); ++j) v[j] = Rational(f.normal[j]) / f.offset;
    out.vertices.push_back(std::move(v));
  }
  return out;
}

RationalPolytope polar_dual(const RationalPolytope& p) {
  Integer l = 1;
  for (const auto& v : p.vertices)
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<IntVector> scaled;
  for (const auto& v : p.vertices) {
    IntVector s(p.dim);
    for (std::size_t j = 0; j < p.dim; ++j) {
      Rational x = v[j] * l;
      s[j] = x.get_num();
    }
    scaled.push_back(std::move(s));
  }
  RationalPolytope out;
  out.dim = p.dim;
  for (const auto& h : convex_hull_facets(scaled)) {
    if (sgn(h.offset) <= 0)
      throw PolytopeError(PolytopeErrorKind::OriginNotInterior, "polar_dual: origin is not interior");
    RatVector v(p.dim);
    for (std::size_t j = 0; j < p.dim; ++j) v[j] = Rational(h.normal[j] * l, h.offset);
    for (auto& x : v) x.canonicalize();
    out.vertices.push_back(std::move(v));
  }
  return out;
}

std::vector<IntVector> lattice_points(const LatticePolytope& p) {
  const std::size_t n = p.dim();
  IntVector lo = p.vertex(0), hi = p.vertex(0);
  for (const auto& v : p.vertices())
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] < lo[j]) lo[j] = v[j];
      if (v[j] > hi[j]) hi[j] = v[j];
    }
  std::vector<IntVector> out;
  IntVector x = lo;
  while (true) {
    bool inside = std::all_of(p.facets().begin(), p.facets().end(),
                              [&](const Facet& f) { return Rational(dot(f.normal, x)) <= f.offset; });
    if (inside) out.push_back(x);
    // odometer, last coordinate fastest
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (x[j] < hi[j]) {
        ++x[j];
        break;
      }
      x[j] = lo[j];
      if (j == 0) return out;
    }
  }
}

namespace {

// Triangulation of conv(pts) (full-dimensional in Z^m, every point a vertex)
// by recursive pulling: cone the pulling vertex over triangulations of the
// facets that avoid it.
std::vector<std::vector<std::size_t>> pulling_triangulation(Points pts, PullingOrder order) {
  const std::size_t m = pts.front().size();
  if (pts.size() == m + 1) {
    std::vector<std::size_t> all(pts.size());
    std::iota(all.begin(), all.end(), 0);
    return {all};
  }
  const std::size_t apex = order == PullingOrder::FirstVertex ? 0 : pts.size() - 1;
  std::vector<std::vector<std::size_t>> out;
  for (const auto& f : convex_hull_facets(pts)) {
    const auto& idx = f.point_indices;
    if (std::binary_search(idx.begin(), idx.end(), apex)) continue;
    std::vector<std::vector<std::size_t>> sub;
    if (m == 1) {
      sub.push_back({0});
    } else {
      auto proj = project(pts, idx, first_nonzero(f.normal));
      sub = pulling_triangulation(proj, order);
    }
    for (auto& s : sub) {
      std::vector<std::size_t> simplex;
      for (auto k : s) simplex.push_back(idx[k]);
      simplex.push_back(apex);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

// Simplices (as vertex index sets) of the facet triangulation used for the
// cone-over-facets decomposition.
std::vector<std::vector<std::size_t>> facet_simplices(const LatticePolytope& p, PullingOrder order) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = p.dim();
  for (const auto& f : p.facets()) {
    if (f.vertex_indices.size() == n) {
      out.push_back(f.vertex_indices);
      continue;
    }
    if (n == 1) {
      out.push_back(f.vertex_indices);
      continue;
    }
    auto proj = project(p.vertices(), f.vertex_indices, first_nonzero(f.normal));
    for (const auto& s : pulling_triangulation(proj, order)) {
      std::vector<std::size_t> simplex;
      for (auto k : s) simplex.push_back(f.vertex_indices[k]);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

}  // namespace

RatVector centroid(const LatticePolytope& p, PullingOrder order) {
  const std::size_t n = p.dim();
  Integer total = 0;
  IntVector weighted(n);
  for (const auto& s : facet_simplices(p, order)) {
    std::vector<IntVector> cols;
    for (auto i : s) cols.push_back(p.vertex(i));
    Integer vol = abs(determinant(IntMatrix::from_columns(cols, n)));
    total += vol;
    for (const auto& c : cols)
      for (std::size_t j = 0; j < n; ++j) weighted[j] += vol * c[j];
  }
  RatVector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = Rational(weighted[j], total * Integer(static_cast<unsigned long>(n + 1)));
    out[j].canonicalize();
  }
  return out;
}

Integer normalized_volume(const LatticePolytope& p) {
  Integer total = 0;
  for (const auto& s : facet_simplices(p, PullingOrder::FirstVertex)) {
    std::vector<IntVector> cols;
    for (auto i : s) cols.push_back(p.vertex(i));
    total += abs(determinant(IntMatrix::from_columns(cols, p.dim())));
  }
  return total;
}

IntVector vertex_sum(const LatticePolytope& p) {
  IntVector s(p.dim());
  for (const auto& v : p.vertices())
    for (std::size_t j = 0; j < p.dim(); ++j) s[j] += v[j];
  return s;
}

}  // namespace fanolattice
