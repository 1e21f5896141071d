#include "doctest.h"
#include "fanolattice/catalog.hpp"
#include "fanolattice/kstability.hpp"
#include "test_support.hpp"

using namespace fanolattice;
using namespace fanolattice::testing;

TEST_CASE("barycentre verdicts") {
  auto a = k_stability(p2());
  CHECK(a.applicable);
  CHECK(a.is_zero);
  CHECK(a.barycentre == rv({0, 0}));

  auto b = k_stability(bl1p2());
  CHECK(b.applicable);
  CHECK_FALSE(b.is_zero);
  CHECK(b.barycentre == RatVector{Rational(1, 6), Rational(1, 6)});
}

TEST_CASE("weighted projective space P(1,1,1,1,2)") {
  auto q = weighted_projective({1, 1, 1, 1, 2});
  auto v = k_stability(q);
  CHECK(v.applicable);
  CHECK_FALSE(v.is_zero);
  // a simplex: the barycentre is the vertex average, which here is -v_4 / 5
  RatVector expected(4);
  for (std::size_t j = 0; j < 4; ++j) {
    Rational s = 0;
    for (const auto& x : q.vertices()) s += x[j];
    expected[j] = s / 5;
    CHECK(expected[j] == -Rational(q.vertex(4)[j]) / 5);
  }
  CHECK(v.barycentre == expected);
  CHECK_THROWS_AS(main_theorem_check(q), NotSmoothError);
}

TEST_CASE("non-reflexive input is flagged") {
  auto v = k_stability(poly({{1, 0}, {0, 1}, {-1, -3}}));
  CHECK_FALSE(v.applicable);
}

TEST_CASE("main theorem on small examples") {
  CHECK(main_theorem_check(p2()));
  CHECK(main_theorem_check(bl1p2()));
  CHECK(main_theorem_check(hexagon()));
  auto c4 = product(product(projective_space(1), projective_space(1)), product(projective_space(1), projective_space(1)));
  CHECK(is_fibre_like(c4));
  CHECK(k_stability(c4).is_zero);
  CHECK(main_theorem_check(c4));
}

TEST_CASE("K-stable but not fibre-like") {
  auto p = product(projective_space(1), projective_space(2));
  CHECK(k_stability(p).is_zero);
  CHECK_FALSE(is_fibre_like(p));
  auto od = orbit_data(p, automorphism_group(p));
  CHECK(od.t == 2);
  CHECK(od.k == 0);
}

TEST_CASE("k = 0 forces a zero barycentre") {
  for (const auto& p : {p2(), hexagon(), cross2(), bl1p2(), product(projective_space(1), projective_space(2)),
                        del_pezzo_polytope(4)}) {
    auto od = orbit_data(p, automorphism_group(p));
    if (od.k == 0) CHECK(k_stability(p).is_zero);
  }
}
