#include "doctest.h"
#include "fanolattice/classify.hpp"
#include "fanolattice/toric.hpp"
#include "polygon_oracle.hpp"
#include "test_support.hpp"

#include <set>

using namespace fanolattice;
using namespace fanolattice::testing;

namespace {

LatticePolytope scrambled(const LatticePolytope& p, std::mt19937_64& rng) {
  auto q = p.transformed(random_unimodular(p.dim(), rng, 8));
  auto vs = q.vertices();
  std::shuffle(vs.begin(), vs.end(), rng);
  return LatticePolytope(vs);
}

std::vector<SourceEntry> as_source(const EnumerationResult& r) {
  std::vector<SourceEntry> out;
  for (const auto& cf : r.classes) out.push_back({canonical_polytope(cf), std::nullopt});
  return out;
}

const EnumerationResult& dim2() {
  static const EnumerationResult r = enumerate_smooth_fano(2);
  return r;
}

const EnumerationResult& dim3() {
  static const EnumerationResult r = enumerate_smooth_fano(3);
  return r;
}

}  // namespace

TEST_CASE("canonical form examples") {
  auto p = p2();
  CHECK(canonical_form(p.transformed(IntMatrix{{1, 1}, {0, 1}})) == canonical_form(p));
  CHECK(canonical_form(poly({{0, 1}, {1, 0}, {-1, -1}})) == canonical_form(p));
  CHECK(canonical_form(p) != canonical_form(bl1p2()));
  CHECK(canonical_form(hexagon()) != canonical_form(bl1p2()));
  auto cf = canonical_form(hexagon());
  CHECK(cf.index == 1);
  CHECK(cf.hash.size() == 16);
  CHECK(canonical_form(canonical_polytope(cf)) == cf);
}

TEST_CASE("canonical form of singular polytopes") {
  std::mt19937_64 rng(21);
  auto q = weighted_projective({1, 1, 1, 1, 2});
  auto r = weighted_projective({1, 1, 2});
  auto cq = canonical_form(q);
  auto cr = canonical_form(r);
  CHECK(cq != canonical_form(projective_space(4)));
  CHECK(cr != canonical_form(p2()));
  for (int i = 0; i < 20; ++i) {
    CHECK(canonical_form(scrambled(q, rng)) == cq);
    CHECK(canonical_form(scrambled(r, rng)) == cr);
  }
  // conv{(1,0),(0,1),(-1,-3)} has a cone of index 3
  auto s = poly({{1, 0}, {0, 1}, {-1, -3}});
  auto cs = canonical_form(s);
  for (int i = 0; i < 20; ++i) CHECK(canonical_form(scrambled(s, rng)) == cs);
  CHECK(cs != cr);
}

TEST_CASE("dim 2 enumeration matches the polygon oracle") {
  const auto& r = dim2();
  CHECK(r.classes.size() == 5);
  CHECK(r.status == "complete");
  auto oracle = smooth_fano_polygon_oracle(2);
  CHECK(oracle.size() == 5);
  std::set<std::vector<long>> mine;
  for (const auto& cf : r.classes) mine.insert(cyclic_min(c_sequence(ccw_cycle(canonical_polytope(cf)))));
  CHECK(mine == oracle);
}

TEST_CASE("dim 2 fibre-like rows") {
  std::size_t processed = 0;
  auto rows = classify_fibre_like(as_source(dim2()), &processed);
  CHECK(processed == 5);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].vertex_count == 3);
  CHECK(rows[1].vertex_count == 4);
  CHECK(rows[2].vertex_count == 6);
  CHECK(rows[0].catalog_name == "P^2");
  CHECK(rows[1].catalog_name == "P^1 x P^1");
  CHECK(rows[2].catalog_name == "V_2");
  for (const auto& row : rows) CHECK(row.barycentre_zero);
}

TEST_CASE("dim 3 enumeration") {
  const auto& r = dim3();
  CHECK(r.classes.size() == 18);
  CHECK(r.status == "complete");
  std::set<std::string> hashes;
  for (const auto& cf : r.classes) hashes.insert(cf.hash);
  CHECK(hashes.size() == 18);
  auto rows = classify_fibre_like(as_source(r));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].vertex_count == 4);
  CHECK(rows[1].vertex_count == 6);
  CHECK(rows[0].catalog_name == "P^3");
  CHECK(rows[1].catalog_name == "(P^1)^3");
  std::vector<LatticePolytope> fl;
  for (const auto& cf : r.classes) {
    auto p = canonical_polytope(cf);
    if (is_fibre_like(p)) fl.push_back(p);
  }
  CHECK(conjecture_check(3, fl));
  fl.pop_back();
  CHECK_FALSE(conjecture_check(3, fl));
  CHECK_THROWS_AS(conjecture_check(4, fl), std::invalid_argument);
}

TEST_CASE("canonical form is invariant and separates classes") {
  std::mt19937_64 rng(1234);
  for (const auto* r : {&dim2(), &dim3()}) {
    for (const auto& cf : r->classes) {
      auto p = canonical_polytope(cf);
      for (int i = 0; i < 100; ++i) {
        auto q = scrambled(p, rng);
        REQUIRE(canonical_form(q) == cf);
      }
    }
  }
}

TEST_CASE("catalog polytopes appear in the enumeration") {
  for (const auto* r : {&dim2(), &dim3()}) {
    std::set<std::string> have;
    for (const auto& cf : r->classes) have.insert(cf.bytes);
    for (const auto& e : catalog(r->dim)) CHECK(have.count(canonical_form(e.polytope).bytes));
  }
}

TEST_CASE("enumeration is deterministic and job-independent") {
  auto a = enumerate_smooth_fano(3);
  auto b = enumerate_smooth_fano(3, {.bound = 0, .node_limit = 0, .jobs = 3});
  REQUIRE(a.classes.size() == b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i) CHECK(a.classes[i].bytes == b.classes[i].bytes);
  CHECK(a.classes == dim3().classes);
}

TEST_CASE("enumeration limits") {
  auto r = enumerate_smooth_fano(3, {.bound = 0, .node_limit = 20, .jobs = 1});
  CHECK_FALSE(r.complete);
  CHECK(r.status == "incomplete");
  // a pool too small to reach every class is reported, not hidden
  auto s = enumerate_smooth_fano(3, {.bound = 1, .node_limit = 0, .jobs = 1});
  CHECK(s.classes.size() < 18);
  CHECK(s.status == "bound-limited");
  CHECK(s.complete);  // the search itself ran to the end
  CHECK_THROWS_AS(enumerate_smooth_fano(1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_smooth_fano(7), std::invalid_argument);
}

TEST_CASE("property suite on every class of dims 2 and 3") {
  for (const auto* r : {&dim2(), &dim3()}) {
    for (const auto& cf : r->classes) {
      auto p = canonical_polytope(cf);
      CHECK(is_reflexive(p));
      CHECK(is_terminal(p));
      auto rep = property_suite(p);
      CHECK(rep.ok());
      for (const auto& v : rep.violations) MESSAGE(v);
    }
  }
}

TEST_CASE("analysis report") {
  auto a = analyze(p2());
  CHECK(a.smooth);
  CHECK(a.fibre_like == true);
  CHECK(a.barycentre_zero);
  CHECK(a.aut_order == 6);
  CHECK(a.catalog_name == "P^2");
  auto w = analyze(weighted_projective({1, 1, 1, 1, 2}));
  CHECK_FALSE(w.smooth);
  CHECK_FALSE(w.fibre_like.has_value());
  CHECK(w.reflexive);
  CHECK(w.terminal);
  CHECK_FALSE(w.barycentre_zero);
}
