#include "doctest.h"
#include "test_support.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

using namespace fanolattice;
using namespace fanolattice::testing;

namespace {

std::set<IntVector> normals_of(const LatticePolytope& p) {
  std::set<IntVector> out;
  for (const auto& f : p.facets()) out.insert(f.normal);
  return out;
}

// Exhaustive oracle: every affinely independent m-subset whose hyperplane
// leaves all points on one side spans a facet. Returns the facet point sets.
std::set<std::vector<std::size_t>> brute_force_facets(const std::vector<IntVector>& pts) {
  const std::size_t m = pts.front().size();
  std::set<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick(m);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == m) {
      RatMatrix rows(m, m + 1);
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < m; ++j) rows(r, j) = pts[pick[r]][j];
        rows(r, m) = -1;
      }
      auto ns = nullspace(rows);
      if (ns.size() != 1) return;
      int side = 0;
      std::vector<std::size_t> on;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        Rational v = -ns[0][m];
        for (std::size_t j = 0; j < m; ++j) v += ns[0][j] * pts[i][j];
        const int s = sgn(v);
        if (s == 0) {
          on.push_back(i);
          continue;
        }
        if (side == 0) side = s;
        if (s != side) return;
      }
      out.insert(on);
      return;
    }
    for (std::size_t i = start; i < pts.size(); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

// Shoelace centroid of a convex polygon given in counter-clockwise order.
RatVector shoelace_centroid(const std::vector<IntVector>& ccw) {
  Integer area2 = 0, cx = 0, cy = 0;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const auto& a = ccw[i];
    const auto& b = ccw[(i + 1) % ccw.size()];
    Integer cross = a[0] * b[1] - b[0] * a[1];
    area2 += cross;
    cx += (a[0] + b[0]) * cross;
    cy += (a[1] + b[1]) * cross;
  }
  RatVector c{Rational(cx, 3 * area2), Rational(cy, 3 * area2)};
  for (auto& x : c) x.canonicalize();
  return c;
}

}  // namespace

TEST_CASE("facets of the P2 triangle") {
  auto p = p2();
  CHECK(normals_of(p) == std::set<IntVector>{iv({1, 1}), iv({-2, 1}), iv({1, -2})});
  for (const auto& f : p.facets()) CHECK(f.offset == 1);
}

TEST_CASE("facets of the square cross-polytope") {
  auto p = cross2();
  CHECK(p.facets().size() == 4);
  CHECK(normals_of(p) == std::set<IntVector>{iv({1, 1}), iv({1, -1}), iv({-1, 1}), iv({-1, -1})});
  for (const auto& f : p.facets()) CHECK(f.offset == 1);
}

TEST_CASE("facets of Bl1 P2") {
  auto p = bl1p2();  // A=0, B=1, C=2, D=3
  std::set<std::vector<std::size_t>> sets;
  for (const auto& f : p.facets()) sets.insert(f.vertex_indices);
  CHECK(sets == std::set<std::vector<std::size_t>>{{0, 3}, {1, 3}, {1, 2}, {0, 2}});
}

TEST_CASE("facet invariants: incidence and strict separation") {
  auto p = poly({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 0}, {-1, 0, 0}});
  for (std::size_t i = 0; i < p.vertex_count(); ++i) {
    std::size_t on = 0;
    for (const auto& f : p.facets()) {
      Rational v = dot(f.normal, p.vertex(i));
      bool incident = std::binary_search(f.vertex_indices.begin(), f.vertex_indices.end(), i);
      if (incident) {
        CHECK(v == f.offset);
        ++on;
      } else {
        CHECK(v < f.offset);
      }
    }
    CHECK(on >= p.dim());
  }
}

TEST_CASE("gift wrapping agrees with exhaustive facet search") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 2 + trial % 3;
    std::uniform_int_distribution<int> coord(-2, 2);
    std::set<IntVector> uniq;
    while (uniq.size() < m + 4) {
      IntVector v(m);
      for (auto& x : v) x = coord(rng);
      uniq.insert(v);
    }
    std::vector<IntVector> pts(uniq.begin(), uniq.end());
    std::vector<std::size_t> all(pts.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<HullFacet> hull;
    try {
      hull = convex_hull_facets(pts);
    } catch (const PolytopeError& e) {
      CHECK(e.kind() == PolytopeErrorKind::Degenerate);
      continue;
    }
    std::set<std::vector<std::size_t>> got;
    for (const auto& h : hull) got.insert(h.point_indices);
    CHECK(got == brute_force_facets(pts));
  }
}

TEST_CASE("non-simplicial hull: the 3-cube") {
  std::vector<IntVector> cube;
  for (int x : {-1, 1})
    for (int y : {-1, 1})
      for (int z : {-1, 1}) cube.push_back(iv({x, y, z}));
  LatticePolytope p(cube);
  CHECK(p.facets().size() == 6);
  CHECK_FALSE(p.is_simplicial());
  for (const auto& f : p.facets()) CHECK(f.vertex_indices.size() == 4);
}

TEST_CASE("spans_face") {
  auto p = p2();
  std::vector<std::size_t> edge{0, 1}, all{0, 1, 2};
  CHECK(spans_face(p, edge));
  CHECK_FALSE(spans_face(p, all));
  auto b = bl1p2();
  std::vector<std::size_t> ab{0, 1};
  CHECK_FALSE(spans_face(b, ab));

  std::vector<IntVector> cube;
  for (int x : {-1, 1})
    for (int y : {-1, 1})
      for (int z : {-1, 1}) cube.push_back(iv({x, y, z}));
  LatticePolytope c(cube);
  try {
    spans_face(c, edge);
    FAIL("expected non-simplicial error");
  } catch (const PolytopeError& e) {
    CHECK(e.kind() == PolytopeErrorKind::NonSimplicial);
  }
}

TEST_CASE("polar dual") {
  auto d = polar_dual(cross2());
  std::set<RatVector> got(d.vertices.begin(), d.vertices.end());
  CHECK(got == std::set<RatVector>{rv({1, 1}), rv({1, -1}), rv({-1, 1}), rv({-1, -1})});

  auto dp2 = polar_dual(p2());
  std::set<RatVector> gp2(dp2.vertices.begin(), dp2.vertices.end());
  CHECK(gp2 == std::set<RatVector>{rv({1, 1}), rv({-2, 1}), rv({1, -2})});

  for (const auto& p : {p2(), cross2(), hexagon(), bl1p2()}) {
    auto dd = polar_dual(polar_dual(p));
    std::set<RatVector> back(dd.vertices.begin(), dd.vertices.end());
    std::set<RatVector> orig;
    for (const auto& v : p.vertices()) orig.insert(to_rational(v));
    CHECK(back == orig);
  }
}

TEST_CASE("lattice points") {
  CHECK(lattice_points(p2()).size() == 4);
  CHECK(lattice_points(cross2()).size() == 5);
  auto big = poly({{1, 0}, {0, 1}, {-1, -1}, {1, -2}});  // contains (0,-1)
  auto pts = lattice_points(big);
  CHECK(std::find(pts.begin(), pts.end(), iv({0, -1})) != pts.end());
}

TEST_CASE("constructor validation") {
  auto kind_of = [](auto&& make) {
    try {
      make();
    } catch (const PolytopeError& e) {
      return e.kind();
    }
    FAIL("no error");
    return PolytopeErrorKind::Degenerate;
  };
  CHECK(kind_of([] { poly({{2, 0}, {-1, 0}, {0, 1}, {0, -1}}); }) == PolytopeErrorKind::NonPrimitiveVertex);
  CHECK(kind_of([] { poly({{1, 0}, {1, 0}, {0, 1}, {-1, -1}}); }) == PolytopeErrorKind::DuplicateVertex);
  CHECK(kind_of([] { poly({{1, 0}, {0, 1}, {1, 1}}); }) == PolytopeErrorKind::OriginNotInterior);
  CHECK(kind_of([] { poly({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {0, 0}}); }) ==
        PolytopeErrorKind::NonPrimitiveVertex);
  CHECK(kind_of([] { poly({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}}); }) == PolytopeErrorKind::Degenerate);
  CHECK(kind_of([] { poly({{1, 0}, {0, 1}, {-1}}); }) == PolytopeErrorKind::DimensionMismatch);
  // (1,1) sits in the middle of the edge from (2,1) to (0,1).
  CHECK(kind_of([] { poly({{2, 1}, {0, 1}, {1, 1}, {-1, -1}}); }) == PolytopeErrorKind::NotAVertex);
  CHECK(kind_of([] { poly({{1, 0}, {-1, 0}}); }) == PolytopeErrorKind::TooFewVertices);
}

TEST_CASE("centroid examples") {
  CHECK(centroid(p2()) == rv({0, 0}));
  RatVector expected{Rational(1, 6), Rational(1, 6)};
  CHECK(centroid(bl1p2()) == expected);
  CHECK(centroid(hexagon()) == rv({0, 0}));
}

TEST_CASE("centroid matches the shoelace formula on polygons") {
  // counter-clockwise vertex lists
  std::vector<std::vector<IntVector>> polygons{
      {iv({1, 0}), iv({1, 1}), iv({0, 1}), iv({-1, -1})},
      {iv({2, -1}), iv({1, 1}), iv({-1, 2}), iv({-1, -1}), iv({1, -2})},
      {iv({3, 1}), iv({-1, 2}), iv({-2, -3}), iv({1, -1})},
  };
  for (const auto& ccw : polygons) {
    LatticePolytope p(ccw);
    CHECK(centroid(p) == shoelace_centroid(ccw));
  }
}

TEST_CASE("centroid is equivariant, interior, and triangulation independent") {
  // Non-simplicial, asymmetric prism.
  auto prism = poly({{1, 1, -1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, -1},
                     {2, 1, 1}, {2, -1, 1}, {0, 1, 1}, {0, -1, 1}});
  CHECK_FALSE(prism.is_simplicial());
  auto first = centroid(prism, PullingOrder::FirstVertex);
  auto last = centroid(prism, PullingOrder::LastVertex);
  CHECK(first == last);
  CHECK(first == RatVector{Rational(1, 2), Rational(0), Rational(0)});

  std::mt19937_64 rng(17);
  for (const auto& p : {bl1p2(), prism, poly({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 0}})}) {
    auto c = centroid(p);
    for (const auto& f : p.facets()) CHECK(dot(to_rational(f.normal), c) < f.offset);
    for (int trial = 0; trial < 20; ++trial) {
      IntMatrix w = random_unimodular(p.dim(), rng);
      CHECK(centroid(p.transformed(w)) == matvec(to_rational(w), c));
    }
  }
}

TEST_CASE("vertex sum") {
  CHECK(vertex_sum(p2()) == iv({0, 0}));
  CHECK(vertex_sum(bl1p2()) == iv({1, 1}));
  auto cube_cross = poly({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  CHECK(vertex_sum(cube_cross) == iv({0, 0, 0}));
}
