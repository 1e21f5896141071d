#include "doctest.h"
#include "fanolattice/primitive.hpp"
#include "fanolattice/toric.hpp"
#include "test_support.hpp"

#include <set>

using namespace fanolattice;
using namespace fanolattice::testing;

namespace {

using Sets = std::set<std::vector<std::size_t>>;

Sets as_sets(const std::vector<PrimitiveCollection>& cs) {
  Sets out;
  for (const auto& c : cs) out.insert(c.indices);
  return out;
}

// Oracle: every subset of the vertices, kept when it is not contained in a
// facet but each one-smaller subset is.
Sets brute_force_collections(const LatticePolytope& p) {
  const std::size_t m = p.vertex_count();
  auto in_facet = [&](const std::vector<std::size_t>& s) {
    for (const auto& f : p.facets()) {
      std::set<std::size_t> fs(f.vertex_indices.begin(), f.vertex_indices.end());
      bool all = true;
      for (auto i : s) all = all && fs.count(i);
      if (all) return true;
    }
    return false;
  };
  Sets out;
  for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) s.push_back(i);
    if (in_facet(s)) continue;
    bool minimal = true;
    for (std::size_t k = 0; k < s.size() && minimal; ++k) {
      auto t = s;
      t.erase(t.begin() + static_cast<long>(k));
      if (!in_facet(t)) minimal = false;
    }
    if (minimal) out.insert(s);
  }
  return out;
}

LatticePolytope cube3() {
  return poly({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
}

// Two smooth Fano threefolds beyond products: the blow-up of P^3 at a point
// and P(O + O(1)) over P^2.
LatticePolytope bl_p3() { return poly({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 1}}); }
LatticePolytope bundle_p2() { return poly({{1, 0, 0}, {0, 1, 0}, {-1, -1, 1}, {0, 0, 1}, {0, 0, -1}}); }

}  // namespace

TEST_CASE("primitive collections of the small examples") {
  CHECK(as_sets(primitive_collections(p2())) == Sets{{0, 1, 2}});
  CHECK(as_sets(primitive_collections(cross2())) == Sets{{0, 1}, {2, 3}});
  // A=0, B=1, C=2, D=3
  CHECK(as_sets(primitive_collections(bl1p2())) == Sets{{0, 1}, {2, 3}});
}

TEST_CASE("primitive collections agree with subset oracle") {
  std::mt19937_64 rng(11);
  for (const auto& base : {p2(), cross2(), bl1p2(), hexagon(), cube3(), bl_p3(), bundle_p2()}) {
    auto p = base.transformed(random_unimodular(base.dim(), rng));
    REQUIRE(is_smooth(p));
    CHECK(as_sets(primitive_collections(p)) == brute_force_collections(p));
  }
}

TEST_CASE("primitive relations") {
  auto p = p2();
  auto r = primitive_relation(p, {{0, 1, 2}});
  CHECK(r.focus.empty());
  CHECK(r.degree == 3);

  auto b = bl1p2();
  auto ab = primitive_relation(b, {{0, 1}});
  CHECK(ab.focus == std::vector<std::size_t>{3});
  CHECK(ab.coefficients == std::vector<Integer>{1});
  CHECK(ab.degree == 1);
  auto cd = primitive_relation(b, {{2, 3}});
  CHECK(cd.focus.empty());
  CHECK(cd.degree == 2);

  // P(O + O(1)) over P^2: x1 + x2 + x3 = y with y = (0,0,1)
  auto q = bundle_p2();
  auto rq = primitive_relation(q, {{0, 1, 2}});
  CHECK(rq.focus == std::vector<std::size_t>{3});
  CHECK(rq.degree == 2);
}

TEST_CASE("relation identity and positive degree") {
  for (const auto& p : {p2(), cross2(), bl1p2(), hexagon(), cube3(), bl_p3(), bundle_p2()}) {
    for (const auto& c : primitive_collections(p)) {
      auto r = primitive_relation(p, c);
      IntVector lhs(p.dim()), rhs(p.dim());
      for (auto i : c.indices)
        for (std::size_t j = 0; j < p.dim(); ++j) lhs[j] += p.vertex(i)[j];
      for (std::size_t k = 0; k < r.focus.size(); ++k) {
        CHECK(r.coefficients[k] > 0);
        for (std::size_t j = 0; j < p.dim(); ++j) rhs[j] += r.coefficients[k] * p.vertex(r.focus[k])[j];
      }
      CHECK(lhs == rhs);
      CHECK(r.degree > 0);
      CHECK(spans_face(p, r.focus));
      CHECK_FALSE(spans_face(p, c.indices));
      for (std::size_t k = 0; k < c.indices.size(); ++k) {
        auto sub = c.indices;
        sub.erase(sub.begin() + static_cast<long>(k));
        CHECK(spans_face(p, sub));
      }
    }
  }
}

TEST_CASE("trivial focus collections") {
  CHECK(as_sets(trivial_focus_collections(p2())) == Sets{{0, 1, 2}});
  CHECK(as_sets(trivial_focus_collections(bl1p2())) == Sets{{2, 3}});
  CHECK(as_sets(trivial_focus_collections(cube3())) == Sets{{0, 1}, {2, 3}, {4, 5}});
  CHECK_FALSE(trivial_focus_collections(bl_p3()).empty());
}

TEST_CASE("non-smooth inputs") {
  auto cube = poly({{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1},
                    {-1, 1, 1}, {-1, 1, -1}, {-1, -1, 1}, {-1, -1, -1}});
  CHECK_THROWS_AS(primitive_collections(cube), PolytopeError);
  // simplicial but singular
  auto q = poly({{1, 0}, {0, 1}, {-1, 0}, {1, -2}});
  // (0,1) + (1,-2) = (1,-1) = (1/2)(1,0) + (1/2)(1,-2) is non-integral
  bool threw = false;
  for (const auto& c : primitive_collections(q)) {
    try {
      primitive_relation(q, c);
    } catch (const NotSmoothError&) {
      threw = true;
    }
  }
  CHECK(threw);
}

TEST_CASE("cone condition") {
  auto b = bl1p2();
  std::vector<std::size_t> cd{2, 3};
  std::vector<Integer> ones{1, 1};
  CHECK_FALSE(violates_cone_condition(b, cd, ones, {}, {}));
  auto p = p2();
  std::vector<std::size_t> all{0, 1, 2};
  std::vector<Integer> three{1, 1, 1};
  CHECK_FALSE(violates_cone_condition(p, all, three, {}, {}));
  // A + B = D with 2 >= 1: {A,B} must not span a cone
  std::vector<std::size_t> ab{0, 1}, d{3};
  std::vector<Integer> one{1};
  CHECK_FALSE(violates_cone_condition(b, ab, ones, d, one));
  // wrong arithmetic
  CHECK_THROWS_AS(violates_cone_condition(b, ab, ones, cd, ones), std::invalid_argument);
  // D = A + B has the smaller side on the left
  CHECK_THROWS_AS(violates_cone_condition(b, d, one, ab, ones), std::invalid_argument);
}
