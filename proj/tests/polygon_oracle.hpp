#pragma once

// Independent count of smooth Fano polygons. Every smooth complete fan in
// the plane, after moving one cone to (e1, e2), is a walk
// v_{i+1} = c_i v_i - v_{i-1}; the polygon class is the cyclic sequence of
// c_i up to rotation and reversal. Only walks inside [-r, r]^2 are tried.

#include "fanolattice/polytope.hpp"
#include "fanolattice/toric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <set>
#include <vector>

namespace fanolattice::testing {

using Pt = std::array<long, 2>;

inline std::vector<long> c_sequence(const std::vector<Pt>& cyc) {
  const std::size_t k = cyc.size();
  std::vector<long> cs;
  for (std::size_t i = 0; i < k; ++i) {
    const Pt& a = cyc[(i + k - 1) % k];
    const Pt& b = cyc[i];
    const Pt& c = cyc[(i + 1) % k];
    const Pt s{a[0] + c[0], a[1] + c[1]};
    cs.push_back(b[0] != 0 ? s[0] / b[0] : s[1] / b[1]);
  }
  return cs;
}

inline std::vector<long> cyclic_min(std::vector<long> cs) {
  std::vector<long> best = cs;
  for (int flip = 0; flip < 2; ++flip) {
    for (std::size_t r = 0; r < cs.size(); ++r) {
      std::rotate(cs.begin(), cs.begin() + 1, cs.end());
      best = std::min(best, cs);
    }
    std::reverse(cs.begin(), cs.end());
  }
  return best;
}

/// Vertices of a smooth polygon in counter-clockwise order.
inline std::vector<Pt> ccw_cycle(const LatticePolytope& p) {
  const std::size_t m = p.vertex_count();
  std::vector<std::vector<std::size_t>> nb(m);
  for (const auto& f : p.facets()) {
    nb[f.vertex_indices[0]].push_back(f.vertex_indices[1]);
    nb[f.vertex_indices[1]].push_back(f.vertex_indices[0]);
  }
  auto pt = [&](std::size_t i) { return Pt{p.vertex(i)[0].get_si(), p.vertex(i)[1].get_si()}; };
  std::vector<Pt> out{pt(0)};
  std::size_t prev = 0, cur = nb[0][0];
  {
    const Pt a = pt(0), b = pt(cur);
    if (a[0] * b[1] - a[1] * b[0] < 0) cur = nb[0][1];
  }
  while (cur != 0) {
    out.push_back(pt(cur));
    const std::size_t next = nb[cur][0] == prev ? nb[cur][1] : nb[cur][0];
    prev = cur;
    cur = next;
  }
  return out;
}

inline std::set<std::vector<long>> smooth_fano_polygon_oracle(long r) {
  std::set<std::vector<long>> out;
  std::vector<Pt> walk{{1, 0}, {0, 1}};
  // consecutive rays have determinant 1, so every step turns counter-clockwise
  // by less than pi; a walk that has already turned a full circle is dead
  auto turn = [](const Pt& a, const Pt& b) {
    return std::atan2(double(a[0] * b[1] - a[1] * b[0]), double(a[0] * b[0] + a[1] * b[1]));
  };
  double angle = std::acos(0.0);
  const double full = 4 * std::acos(0.0);
  std::function<void()> rec = [&] {
    if (walk.size() > 16 || angle >= full - 1e-9) return;
    const Pt a = walk[walk.size() - 2], b = walk.back();
    for (long c = -2 * r; c <= 2 * r; ++c) {
      const Pt v{c * b[0] - a[0], c * b[1] - a[1]};
      if (std::abs(v[0]) > r || std::abs(v[1]) > r) continue;
      if (v == Pt{1, 0}) {
        // the cone after (b, e1) must be (e1, e2), i.e. e2 = c' e1 - b
        if (b[1] != -1) continue;
        std::vector<IntVector> vs;
        for (const auto& w : walk) vs.push_back(IntVector{Integer(w[0]), Integer(w[1])});
        try {
          LatticePolytope p(vs);
          if (!is_smooth(p) || p.facets().size() != walk.size()) continue;
          // a walk that winds twice has non-consecutive facets
          std::set<std::vector<std::size_t>> edges;
          for (const auto& f : p.facets()) edges.insert(f.vertex_indices);
          bool consecutive = true;
          for (std::size_t i = 0; i < walk.size(); ++i) {
            std::vector<std::size_t> e{i, (i + 1) % walk.size()};
            std::sort(e.begin(), e.end());
            consecutive = consecutive && edges.count(e);
          }
          if (consecutive) out.insert(cyclic_min(c_sequence(walk)));
        } catch (const PolytopeError&) {
        }
        continue;
      }
      if (std::find(walk.begin(), walk.end(), v) != walk.end()) continue;
      const double t = turn(b, v);
      walk.push_back(v);
      angle += t;
      rec();
      angle -= t;
      walk.pop_back();
    }
  };
  rec();
  return out;
}

}  // namespace fanolattice::testing
