#include "fanolattice/symmetry.hpp"

#include "fanolattice/toric.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

namespace fanolattice {

namespace {

using Wide = __int128;

Integer to_integer(Wide x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & ~0ul));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

Integer to_integer(const Integer& x) { return x; }

template <class T>
T from_integer(const Integer& x);

template <>
Wide from_integer<Wide>(const Integer& x) {
  return static_cast<Wide>(x.get_si());
}

template <>
Integer from_integer<Integer>(const Integer& x) {
  return x;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Tracks which elements are needed to reproduce the orbits and the fixed
// space of everything seen so far.
class WitnessTracker {
 public:
  WitnessTracker(std::size_t n, std::size_t m) : n_(n), uf_(m) {
    for (std::size_t i = 0; i < n; ++i) {
      RatVector e(n);
      e[i] = 1;
      fixed_.push_back(std::move(e));
    }
  }

  // Returns true if the element had to be kept.
  bool offer(const AutElement& g) {
    bool keep = false;
    for (std::size_t i = 0; i < g.perm.size(); ++i)
      if (uf_.find(i) != uf_.find(g.perm[i])) keep = true;
    if (!keep) {
      const RatMatrix w = to_rational(g.matrix);
      for (const auto& x : fixed_)
        if (matvec(w, x) != x) {
          keep = true;
          break;
        }
    }
    if (!keep) return false;
    for (std::size_t i = 0; i < g.perm.size(); ++i) uf_.unite(i, g.perm[i]);
    kept_.push_back(g.matrix);
    RatMatrix stacked(n_ * kept_.size(), n_);
    for (std::size_t e = 0; e < kept_.size(); ++e)
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) stacked(e * n_ + i, j) = kept_[e](i, j) - (i == j ? 1 : 0);
    fixed_ = nullspace(stacked);
    return true;
  }

 private:
  std::size_t n_;
  UnionFind uf_;
  std::vector<RatVector> fixed_;
  std::vector<IntMatrix> kept_;
};

struct SearchData {
  std::size_t n = 0, m = 0;
  std::vector<std::size_t> base;
  std::vector<int> fp_class;
  std::vector<std::vector<std::size_t>> common;   // facets through both vertices
  std::vector<std::vector<std::uint64_t>> incid;  // facet bitset per vertex
  std::size_t words = 0;
  IntMatrix adj;  // det * B^{-1}
  Integer det;
};

std::vector<VertexFingerprint> all_fingerprints(const LatticePolytope& p) {
  const std::size_t m = p.vertex_count();
  std::vector<VertexFingerprint> fps(m);
  for (const auto& f : p.facets()) {
    std::vector<Integer> pairing;
    for (const auto& w : p.vertices()) pairing.push_back(dot(f.normal, w));
    std::vector<Integer> profile = pairing;
    std::sort(profile.begin(), profile.end());
    for (std::size_t i = 0; i < m; ++i) fps[i].emplace_back(pairing[i], f.offset, profile);
  }
  for (auto& fp : fps) std::sort(fp.begin(), fp.end());
  return fps;
}

std::vector<std::size_t> independent_base(const LatticePolytope& p) {
  const std::size_t n = p.dim();
  std::vector<std::size_t> base;
  std::vector<IntVector> rows;
  auto try_add = [&](std::size_t i) {
    rows.push_back(p.vertex(i));
    if (rank(IntMatrix::from_rows(rows, n)) == rows.size()) {
      base.push_back(i);
    } else {
      rows.pop_back();
    }
  };
  for (auto i : p.facets().front().vertex_indices) {
    if (base.size() == n) break;
    try_add(i);
  }
  // a facet spans a hyperplane not through 0, so n of its vertices are independent
  return base;
}

SearchData prepare(const LatticePolytope& p) {
  SearchData d;
  d.n = p.dim();
  d.m = p.vertex_count();
  d.base = independent_base(p);

  std::map<VertexFingerprint, int> classes;
  d.fp_class.resize(d.m);
  const auto fps = all_fingerprints(p);
  for (std::size_t i = 0; i < d.m; ++i) {
    auto [it, fresh] = classes.emplace(fps[i], static_cast<int>(classes.size()));
    d.fp_class[i] = it->second;
  }

  const auto& fs = p.facets();
  d.words = (fs.size() + 63) / 64;
  d.incid.assign(d.m, std::vector<std::uint64_t>(d.words, 0));
  for (std::size_t f = 0; f < fs.size(); ++f)
    for (auto i : fs[f].vertex_indices) d.incid[i][f / 64] |= std::uint64_t{1} << (f % 64);
  d.common.assign(d.m, std::vector<std::size_t>(d.m, 0));
  for (std::size_t i = 0; i < d.m; ++i)
    for (std::size_t j = 0; j < d.m; ++j) {
      std::size_t c = 0;
      for (std::size_t w = 0; w < d.words; ++w) c += std::popcount(d.incid[i][w] & d.incid[j][w]);
      d.common[i][j] = c;
    }

  std::vector<IntVector> cols;
  for (auto b : d.base) cols.push_back(p.vertex(b));
  const IntMatrix bm = IntMatrix::from_columns(cols, d.n);
  d.det = determinant(bm);
  const RatMatrix inv = inverse(to_rational(bm));
  d.adj = IntMatrix(d.n, d.n);
  for (std::size_t i = 0; i < d.n; ++i)
    for (std::size_t j = 0; j < d.n; ++j) {
      Rational x = inv(i, j) * d.det;
      d.adj(i, j) = x.get_num();
    }
  return d;
}

bool fits_wide(const LatticePolytope& p, const SearchData& d) {
  const Integer limit = Integer(1) << 24;
  for (const auto& v : p.vertices())
    for (const auto& x : v)
      if (abs(x) >= limit) return false;
  const Integer adj_limit = Integer(1) << 60;
  for (std::size_t i = 0; i < d.n; ++i)
    for (std::size_t j = 0; j < d.n; ++j)
      if (abs(d.adj(i, j)) >= adj_limit / Integer(static_cast<unsigned long>(d.n))) return false;
  return true;
}

template <class T>
class Search {
 public:
  Search(const LatticePolytope& p, const SearchData& d, const AutSearchOptions& opts, LatticeAutGroup& out)
      : p_(p), d_(d), opts_(opts), out_(out), tracker_(d.n, d.m) {
    for (const auto& v : p.vertices()) {
      std::vector<T> w;
      for (const auto& x : v) w.push_back(from_integer<T>(x));
      index_.emplace(w, verts_.size());
      verts_.push_back(std::move(w));
    }
    adj_.assign(d.n, std::vector<T>(d.n));
    for (std::size_t i = 0; i < d.n; ++i)
      for (std::size_t j = 0; j < d.n; ++j) adj_[i][j] = from_integer<T>(d.adj(i, j));
    det_ = from_integer<T>(d.det);
    image_.resize(d.n);
    used_.assign(d.m, false);
    prefix_.assign(d.n + 1, std::vector<std::uint64_t>(d.words, ~std::uint64_t{0}));
    base_prefix_count_.resize(d.n + 1);
    std::vector<std::uint64_t> acc(d.words, ~std::uint64_t{0});
    for (std::size_t k = 0; k < d.n; ++k) {
      for (std::size_t w = 0; w < d.words; ++w) acc[w] &= d.incid[d.base[k]][w];
      base_prefix_count_[k + 1] = count(acc);
    }
  }

  void run() {
    extend(0);
    out_.complete = out_.order <= opts_.store_limit;
    if (!out_.complete) out_.elements.clear();
  }

 private:
  std::size_t count(const std::vector<std::uint64_t>& bits) const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < d_.words; ++w) c += std::popcount(bits[w]);
    return c;
  }

  bool compatible(std::size_t depth, std::size_t c) {
    const std::size_t b = d_.base[depth];
    if (d_.fp_class[c] != d_.fp_class[b]) return false;
    for (std::size_t k = 0; k < depth; ++k)
      if (d_.common[c][image_[k]] != d_.common[b][d_.base[k]]) return false;
    for (std::size_t w = 0; w < d_.words; ++w) prefix_[depth + 1][w] = prefix_[depth][w] & d_.incid[c][w];
    return count(prefix_[depth + 1]) == base_prefix_count_[depth + 1];
  }

  void extend(std::size_t depth) {
    if (depth == d_.n) {
      leaf();
      return;
    }
    for (std::size_t c = 0; c < d_.m; ++c) {
      if (used_[c]) continue;
      if (opts_.prune && !compatible(depth, c)) continue;
      used_[c] = true;
      image_[depth] = c;
      extend(depth + 1);
      used_[c] = false;
    }
  }

  void leaf() {
    const std::size_t n = d_.n;
    // W = C * adj / det, C has the image vertices as columns
    std::vector<std::vector<T>> w(n, std::vector<T>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        T s = 0;
        for (std::size_t k = 0; k < n; ++k) s += verts_[image_[k]][i] * adj_[k][j];
        if (s % det_ != 0) return;
        w[i][j] = s / det_;
      }
    std::vector<std::size_t> perm(d_.m);
    std::vector<bool> hit(d_.m, false);
    std::vector<T> img(n);
    for (std::size_t v = 0; v < d_.m; ++v) {
      for (std::size_t i = 0; i < n; ++i) {
        T s = 0;
        for (std::size_t j = 0; j < n; ++j) s += w[i][j] * verts_[v][j];
        img[i] = s;
      }
      auto it = index_.find(img);
      if (it == index_.end() || hit[it->second]) return;
      hit[it->second] = true;
      perm[v] = it->second;
    }
    AutElement g;
    g.matrix = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g.matrix(i, j) = to_integer(w[i][j]);
    if (!is_unimodular(g.matrix)) return;
    g.perm = std::move(perm);
    ++out_.order;
    if (tracker_.offer(g)) out_.generators.push_back(g);
    if (out_.order <= opts_.store_limit) out_.elements.push_back(std::move(g));
  }

  const LatticePolytope& p_;
  const SearchData& d_;
  const AutSearchOptions& opts_;
  LatticeAutGroup& out_;
  WitnessTracker tracker_;
  std::vector<std::vector<T>> verts_;
  std::map<std::vector<T>, std::size_t> index_;
  std::vector<std::vector<T>> adj_;
  T det_;
  std::vector<std::size_t> image_;
  std::vector<bool> used_;
  std::vector<std::vector<std::uint64_t>> prefix_;
  std::vector<std::size_t> base_prefix_count_;
};

Integer trace(const IntMatrix& m) {
  Integer t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

const std::vector<AutElement>& acting_set(const LatticeAutGroup& g) {
  return g.generators.empty() ? g.elements : g.generators;
}

}  // namespace

VertexFingerprint vertex_fingerprint(const LatticePolytope& p, std::size_t i) { return all_fingerprints(p)[i]; }

LatticeAutGroup automorphism_group(const LatticePolytope& p, const AutSearchOptions& opts) {
  LatticeAutGroup g;
  const SearchData d = prepare(p);
  if (fits_wide(p, d)) {
    Search<Wide>(p, d, opts, g).run();
  } else {
    Search<Integer>(p, d, opts, g).run();
  }
  return g;
}

LatticeAutGroup group_from_elements(std::vector<AutElement> elements) {
  if (elements.empty()) throw std::invalid_argument("group_from_elements: empty element list");
  LatticeAutGroup g;
  WitnessTracker tracker(elements.front().matrix.rows(), elements.front().perm.size());
  for (const auto& e : elements)
    if (tracker.offer(e)) g.generators.push_back(e);
  g.order = elements.size();
  g.elements = std::move(elements);
  g.complete = true;
  return g;
}

OrbitData orbit_data(const LatticePolytope& p, const LatticeAutGroup& g) {
  const auto& acting = acting_set(g);
  if (acting.empty()) throw std::invalid_argument("orbit_data: group has no elements");
  UnionFind uf(p.vertex_count());
  for (const auto& e : acting)
    for (std::size_t i = 0; i < e.perm.size(); ++i) uf.unite(i, e.perm[i]);
  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t i = 0; i < p.vertex_count(); ++i) by_root[uf.find(i)].push_back(i);
  OrbitData od;
  for (auto& [root, orbit] : by_root) od.orbit_partition.push_back(std::move(orbit));
  od.t = od.orbit_partition.size();
  std::vector<IntMatrix> mats;
  for (const auto& e : acting) mats.push_back(e.matrix);
  od.k = fixed_space_dimension(mats);
  od.invariant_ns_dim = static_cast<long>(od.t) - static_cast<long>(od.k);
  return od;
}

namespace {

void require_smooth(const LatticePolytope& p) {
  if (!is_smooth(p))
    throw NotSmoothError(
        "is_fibre_like: the t - k criterion relies on rigidity, known only for smooth toric Fano varieties; "
        "use orbit_data for a non-conclusive diagnostic");
}

}  // namespace

bool is_fibre_like(const LatticePolytope& p, const LatticeAutGroup& g) {
  require_smooth(p);
  return orbit_data(p, g).invariant_ns_dim == 1;
}

bool is_fibre_like(const LatticePolytope& p) {
  require_smooth(p);
  return orbit_data(p, automorphism_group(p)).invariant_ns_dim == 1;
}

BurnsideReport burnside_report(const LatticeAutGroup& g) {
  if (!g.complete || g.elements.empty())
    throw std::invalid_argument("burnside_report: the complete element list is required");
  BurnsideReport r;
  const std::size_t m = g.elements.front().perm.size();
  UnionFind uf(m);
  Integer fixed_points = 0, traces = 0, dual_traces = 0;
  std::vector<IntMatrix> mats, duals;
  for (const auto& e : g.elements) {
    for (std::size_t i = 0; i < m; ++i) {
      uf.unite(i, e.perm[i]);
      if (e.perm[i] == i) ++fixed_points;
    }
    traces += trace(e.matrix);
    const RatMatrix inv = inverse(to_rational(e.matrix));
    IntMatrix dual(inv.rows(), inv.cols());
    for (std::size_t i = 0; i < inv.rows(); ++i)
      for (std::size_t j = 0; j < inv.cols(); ++j) dual(j, i) = inv(i, j).get_num();
    dual_traces += trace(dual);
    mats.push_back(e.matrix);
    duals.push_back(std::move(dual));
  }
  for (std::size_t i = 0; i < m; ++i)
    if (uf.find(i) == i) ++r.t_orbits;
  const Integer order(static_cast<unsigned long>(g.elements.size()));
  r.t_average = Rational(fixed_points, order);
  r.t_average.canonicalize();
  r.k_average = Rational(traces, order);
  r.k_average.canonicalize();
  r.k_dual_average = Rational(dual_traces, order);
  r.k_dual_average.canonicalize();
  r.k_fixed = fixed_space_dimension(mats);
  r.k_dual_fixed = fixed_space_dimension(duals);
  const Rational t(static_cast<unsigned long>(r.t_orbits));
  const Rational k(static_cast<unsigned long>(r.k_fixed));
  r.ok = r.t_average == t && r.k_average == k && r.k_dual_average == k && r.k_dual_fixed == r.k_fixed;
  return r;
}

bool burnside_check(const LatticeAutGroup& g) { return burnside_report(g).ok; }

bool orbit_unions_in_faces(const LatticePolytope& p, const OrbitData& od) {
  const std::size_t t = od.t, k = od.k;
  if (k >= t) return false;
  std::vector<bool> pick(t, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> un;
    for (std::size_t o = 0; o < t; ++o)
      if (pick[o]) un.insert(un.end(), od.orbit_partition[o].begin(), od.orbit_partition[o].end());
    std::sort(un.begin(), un.end());
    if (!spans_face(p, un)) return false;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return true;
}

std::optional<std::vector<PrimitiveCollection>> disjoint_collection_orbit(const LatticePolytope& p,
                                                                          const LatticeAutGroup& g) {
  const auto& acting = g.complete ? g.elements : g.generators;
  for (const auto& start : trivial_focus_collections(p)) {
    // closure of {start} under the acting elements
    std::set<std::vector<std::size_t>> orbit{start.indices};
    std::vector<std::vector<std::size_t>> frontier{start.indices};
    while (!frontier.empty()) {
      auto cur = std::move(frontier.back());
      frontier.pop_back();
      for (const auto& e : acting) {
        std::vector<std::size_t> img;
        for (auto i : cur) img.push_back(e.perm[i]);
        std::sort(img.begin(), img.end());
        if (orbit.insert(img).second) frontier.push_back(std::move(img));
      }
    }
    std::vector<int> hits(p.vertex_count(), 0);
    for (const auto& c : orbit)
      for (auto i : c) ++hits[i];
    if (std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; })) {
      std::vector<PrimitiveCollection> out;
      for (const auto& c : orbit) out.push_back({c});
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace fanolattice
