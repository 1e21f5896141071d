#include "doctest.h"
#include "fanolattice/catalog.hpp"
#include "fanolattice/symmetry.hpp"
#include "fanolattice/toric.hpp"
#include "test_support.hpp"

#include <set>

using namespace fanolattice;
using namespace fanolattice::testing;

namespace {

// Oracle for lattice equivalence of polygons: search matrices with small
// entries.
bool equivalent_2d(const LatticePolytope& a, const LatticePolytope& b) {
  std::set<IntVector> target(b.vertices().begin(), b.vertices().end());
  for (long w00 = -3; w00 <= 3; ++w00)
    for (long w01 = -3; w01 <= 3; ++w01)
      for (long w10 = -3; w10 <= 3; ++w10)
        for (long w11 = -3; w11 <= 3; ++w11) {
          if (w00 * w11 - w01 * w10 != 1 && w00 * w11 - w01 * w10 != -1) continue;
          IntMatrix w{{w00, w01}, {w10, w11}};
          std::set<IntVector> img;
          for (const auto& v : a.vertices()) img.insert(matvec(w, v));
          if (img == target) return true;
        }
  return false;
}

}  // namespace

TEST_CASE("projective spaces") {
  auto p = projective_space(2);
  CHECK(p.vertices() == p2().vertices());
  CHECK(is_smooth(p));
  CHECK(picard_rank(p) == 1);
  CHECK(is_fibre_like(p));
  auto p4 = projective_space(4);
  CHECK(p4.vertex_count() == 5);
  CHECK(is_fibre_like(p4));
  CHECK(projective_space(1).vertex_count() == 2);
  CHECK_THROWS(projective_space(0));
}

TEST_CASE("products") {
  auto s = product(projective_space(1), projective_space(1));
  CHECK(std::set<IntVector>(s.vertices().begin(), s.vertices().end()) ==
        std::set<IntVector>{iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})});
  auto pp = product(projective_space(2), projective_space(2));
  CHECK(pp.dim() == 4);
  CHECK(pp.vertex_count() == 6);
  CHECK(is_fibre_like(pp));
  auto mixed = product(projective_space(1), projective_space(2));
  CHECK(mixed.vertex_count() == 5);
  CHECK_FALSE(is_fibre_like(mixed));
  CHECK(is_smooth(mixed));
}

TEST_CASE("del Pezzo polytopes") {
  auto v2 = del_pezzo_polytope(2);
  CHECK(v2.vertex_count() == 6);
  CHECK(equivalent_2d(v2, hexagon()));
  CHECK(is_fibre_like(v2));
  auto v4 = del_pezzo_polytope(4);
  CHECK(v4.vertex_count() == 10);
  CHECK(is_smooth(v4));
  auto od = orbit_data(v4, automorphism_group(v4));
  CHECK(od.t == 1);
  CHECK(od.k == 0);
  CHECK(del_pezzo_polytope(6).vertex_count() == 14);
  CHECK(is_smooth(del_pezzo_polytope(6)));
  CHECK_THROWS(del_pezzo_polytope(3));
}

TEST_CASE("V_2 x V_2 is fibre-like") {
  auto p = product(del_pezzo_polytope(2), del_pezzo_polytope(2));
  CHECK(p.vertex_count() == 12);
  CHECK(picard_rank(p) == 8);
  CHECK(is_fibre_like(p));
}

TEST_CASE("weighted projective spaces") {
  auto w = weighted_projective({1, 1, 1});
  CHECK(equivalent_2d(w, p2()));

  auto q = weighted_projective({1, 1, 1, 1, 2});
  CHECK(q.dim() == 4);
  CHECK(q.is_simplicial());
  CHECK(is_reflexive(q));
  CHECK(is_terminal(q));
  CHECK_FALSE(is_smooth(q));
  // relation sum q_i v_i = 0 holds in the chosen basis
  IntVector s(4);
  const long qs[] = {1, 1, 1, 1, 2};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 4; ++j) s[j] += qs[i] * q.vertex(i)[j];
  CHECK(s == IntVector(4));

  auto r = weighted_projective({1, 1, 2});
  CHECK(is_reflexive(r));
  CHECK_FALSE(is_terminal(r));
  CHECK_FALSE(is_smooth(r));

  CHECK_THROWS(weighted_projective({2, 2, 1}));
  CHECK_THROWS(weighted_projective({1, 0, 1}));
}

TEST_CASE("named catalog") {
  std::set<std::string> names;
  for (const auto& e : catalog(2)) names.insert(e.name);
  CHECK(names == std::set<std::string>{"P^1 x P^1", "P^2", "V_2"});
  names.clear();
  for (const auto& e : catalog(4)) {
    names.insert(e.name);
    CHECK(e.polytope.dim() == 4);
    CHECK(is_smooth(e.polytope));
  }
  for (const char* n : {"V_4", "V_2 x V_2", "(P^1)^4", "P^2 x P^2", "P^4", "P^1 x P^3", "P^1 x P^1 x V_2"})
    CHECK(names.count(n));
}
