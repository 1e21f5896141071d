#include "fanolattice/classify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace fanolattice {

namespace {

constexpr std::size_t kMaxDim = 8;
using Vec = std::array<int, kMaxDim>;
using Mask = std::uint64_t;

int dot(const Vec& a, const Vec& b, std::size_t d) {
  int s = 0;
  for (std::size_t i = 0; i < d; ++i) s += a[i] * b[i];
  return s;
}

int gcd_of(const Vec& v, std::size_t d) {
  int g = 0;
  for (std::size_t i = 0; i < d; ++i) g = std::gcd(g, v[i]);
  return g;
}

struct FacetRec {
  std::array<int, kMaxDim> vid{};
  Vec u{};
  std::array<Vec, kMaxDim> beta{};  // dual basis: beta[j] . vertex(vid[i]) = [i == j]
  Mask mask = 0;
};

// Candidate pool: primitive w with -d <= sum(w) <= 0 and |w_i| <= bound.
std::vector<Vec> candidate_pool(std::size_t d, long bound) {
  std::vector<Vec> out;
  Vec w{};
  for (std::size_t i = 0; i < d; ++i) w[i] = static_cast<int>(-bound);
  while (true) {
    int level = 0;
    for (std::size_t i = 0; i < d; ++i) level += w[i];
    if (level <= 0 && level >= -static_cast<int>(d) && gcd_of(w, d) == 1) out.push_back(w);
    std::size_t k = 0;
    while (k < d && w[k] == bound) w[k++] = static_cast<int>(-bound);
    if (k == d) break;
    ++w[k];
  }
  return out;
}

struct Shared {
  std::size_t d = 0;
  std::vector<Vec> pool;
  std::uint64_t node_limit = 0;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stopped{false};
  std::vector<std::vector<int>> permutations;  // of 0..d-1, for the symmetry test
};

class Worker {
 public:
  Worker(Shared& sh, unsigned part, unsigned parts) : sh_(sh), d_(sh.d), part_(part), parts_(parts) {
    for (std::size_t i = 0; i < d_; ++i) {
      Vec e{};
      e[i] = 1;
      verts_.push_back(e);
    }
    FacetRec f0;
    for (std::size_t i = 0; i < d_; ++i) {
      f0.vid[i] = static_cast<int>(i);
      f0.u[i] = 1;
      f0.beta[i][i] = 1;
      f0.mask |= Mask{1} << i;
    }
    facets_.push_back(f0);
    for (std::size_t i = 0; i < d_; ++i) open_[f0.mask & ~(Mask{1} << i)] = 0;
    std::vector<int> all(sh.pool.size());
    std::iota(all.begin(), all.end(), 0);
    survivors_.push_back(std::move(all));
  }

  void run() { dfs(0); }

  std::set<CanonicalForm> found;
  std::uint64_t leaves = 0;

 private:
  struct Undo {
    std::vector<std::pair<Mask, int>> reopened;  // ridges that were open before
    std::vector<Mask> added_open;
    bool new_vertex = false;
    int level = 0;
  };

  void dfs(std::size_t depth) {
    const std::uint64_t n = ++sh_.nodes;
    if (sh_.node_limit && n > sh_.node_limit) {
      sh_.stopped = true;
      return;
    }
    if (sh_.stopped) return;
    if (open_.empty()) {
      leaf();
      return;
    }
    // Branch on the open ridge with the fewest candidates; a ridge with none
    // closes the branch.
    std::vector<std::pair<Vec, int>> cands, trial;
    int fi = -1;
    std::size_t wpos = 0;
    for (const auto& [r, owner] : open_) {
      // the special facet's own ridges go first; the symmetry test needs
      // all of its neighbours
      if (depth < d_ && owner != 0) continue;
      const FacetRec& f = facets_[static_cast<std::size_t>(owner)];
      const int w = std::countr_zero(f.mask & ~r);
      std::size_t pos = 0;
      while (f.vid[pos] != w) ++pos;
      collect(f, pos, r, owner == 0, trial, fi < 0 ? std::numeric_limits<std::size_t>::max() : cands.size());
      if (fi < 0 || trial.size() < cands.size()) {
        std::swap(cands, trial);
        fi = owner;
        wpos = pos;
        if (cands.empty()) return;
      }
    }

    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (depth == 0 && c % parts_ != part_) continue;
      const FacetRec copy = facets_[static_cast<std::size_t>(fi)];
      try_add(copy, wpos, fi == 0, cands[c].first, cands[c].second, depth);
      if (sh_.stopped) return;
    }
  }

  // Vertices x with coefficient -1 on the vertex at `wpos`, i.e. those that
  // make a unimodular facet on the far side of the ridge. Stops once `cap`
  // candidates are seen.
  void collect(const FacetRec& f, std::size_t wpos, Mask ridge, bool special, std::vector<std::pair<Vec, int>>& out,
               std::size_t cap) const {
    out.clear();
    const Vec& beta_w = f.beta[wpos];
    for (std::size_t v = 0; v < verts_.size() && out.size() < cap; ++v) {
      const int who = static_cast<int>(v);
      if (!(f.mask >> v & 1) && dot(beta_w, verts_[v], d_) == -1 && admissible(f, wpos, ridge, verts_[v], who) &&
          (!special || key_fits(wpos, verts_[v])))
        out.emplace_back(verts_[v], who);
    }
    for (int s : survivors_.back()) {
      if (out.size() >= cap) break;
      const Vec& x = sh_.pool[static_cast<std::size_t>(s)];
      if (dot(beta_w, x, d_) == -1 && admissible(f, wpos, ridge, x, -1 - s) && (!special || key_fits(wpos, x)))
        out.emplace_back(x, -1 - s);
    }
  }

  // Coordinates of the special facet's neighbour opposite e_i, without the
  // i-th, sorted. Unchanged by permuting the other coordinates.
  Vec neighbour_key(std::size_t i, const Vec& x) const {
    Vec k{};
    std::size_t n = 0;
    for (std::size_t j = 0; j < d_; ++j)
      if (j != i) k[n++] = x[j];
    std::sort(k.begin(), k.begin() + static_cast<long>(n));
    return k;
  }

  // Neighbour keys must not decrease with i (any arrangement can be permuted
  // into that order).
  bool key_fits(std::size_t i, const Vec& x) const {
    const Vec k = neighbour_key(i, x);
    for (std::size_t j = 0; j < d_; ++j) {
      if (!has_key_[j]) continue;
      if (j < i && k < keys_[j]) return false;
      if (j > i && keys_[j] < k) return false;
    }
    return true;
  }

  // The facet across the ridge through x is a supporting hyperplane of the
  // current vertices, shares no ridge that is already closed, and a new x
  // keeps the level budget.
  bool admissible(const FacetRec& f, std::size_t wpos, Mask ridge, const Vec& x, int who) const {
    const bool fresh = who < 0;
    const int xid = fresh ? static_cast<int>(verts_.size()) : who;
    const Vec& bw = f.beta[wpos];
    const int ux = dot(f.u, x, d_);
    Vec u{};
    for (std::size_t i = 0; i < d_; ++i) u[i] = f.u[i] + (ux - 1) * bw[i];
    const Mask mask = (f.mask & ~(Mask{1} << f.vid[wpos])) | (Mask{1} << xid);
    for (std::size_t v = 0; v < verts_.size(); ++v)
      if (!(mask >> v & 1) && dot(u, verts_[v], d_) > 0) return false;
    for (std::size_t j = 0; j < d_; ++j) {
      const Mask r = mask & ~(Mask{1} << (j == wpos ? xid : f.vid[j]));
      if (r != ridge && closed_.count(r)) return false;
    }
    if (fresh) {
      int level = 0;
      for (std::size_t i = 0; i < d_; ++i) level += x[i];
      if (level_sum_ + level < -static_cast<int>(d_)) return false;
    }
    return true;
  }

  // `who` >= 0 is an existing vertex id, otherwise -1 - pool index.
  // Adds the facet through x (already admissible) and recurses.
  void try_add(const FacetRec& f, std::size_t wpos, bool special, const Vec& x, int who, std::size_t depth) {
    const bool fresh = who < 0;
    const int xid = fresh ? static_cast<int>(verts_.size()) : who;
    if (xid >= 64) throw std::runtime_error("enumerate_smooth_fano: more than 64 vertices");
    const Vec& bw = f.beta[wpos];
    const int ux = dot(f.u, x, d_);
    FacetRec g;
    g.mask = (f.mask & ~(Mask{1} << f.vid[wpos])) | (Mask{1} << xid);
    for (std::size_t i = 0; i < d_; ++i) g.u[i] = f.u[i] + (ux - 1) * bw[i];
    int level = 0;
    if (fresh)
      for (std::size_t i = 0; i < d_; ++i) level += x[i];
    for (std::size_t j = 0; j < d_; ++j) {
      if (j == wpos) {
        g.vid[j] = xid;
        for (std::size_t i = 0; i < d_; ++i) g.beta[j][i] = -bw[i];
      } else {
        g.vid[j] = f.vid[j];
        const int a = dot(f.beta[j], x, d_);
        for (std::size_t i = 0; i < d_; ++i) g.beta[j][i] = f.beta[j][i] + a * bw[i];
      }
    }

    // apply
    Undo undo;
    undo.new_vertex = fresh;
    undo.level = level;
    if (fresh) {
      verts_.push_back(x);
      level_sum_ += level;
    }
    std::vector<int> next;
    next.reserve(survivors_.back().size());
    for (int s : survivors_.back()) {
      if (fresh && s == -1 - who) continue;
      if (dot(g.u, sh_.pool[static_cast<std::size_t>(s)], d_) <= 0) next.push_back(s);
    }
    survivors_.push_back(std::move(next));
    const int gi = static_cast<int>(facets_.size());
    facets_.push_back(g);
    for (std::size_t j = 0; j < d_; ++j) {
      const Mask r = g.mask & ~(Mask{1} << g.vid[j]);
      auto it = open_.find(r);
      if (it != open_.end()) {
        undo.reopened.emplace_back(r, it->second);
        open_.erase(it);
        closed_.insert(r);
      } else {
        open_.emplace(r, gi);
        undo.added_open.push_back(r);
      }
    }
    if (special) {
      keys_[wpos] = neighbour_key(wpos, x);
      has_key_[wpos] = true;
    }
    if (depth + 1 == d_) neighbours_ok_ = symmetry_minimal();
    if (depth + 1 != d_ || neighbours_ok_) dfs(depth + 1);
    if (special) has_key_[wpos] = false;

    // undo
    for (Mask r : undo.added_open) open_.erase(r);
    for (const auto& [r, owner] : undo.reopened) {
      closed_.erase(r);
      open_.emplace(r, owner);
    }
    facets_.pop_back();
    survivors_.pop_back();
    if (fresh) {
      verts_.pop_back();
      level_sum_ -= level;
    }
  }

  // The neighbours N_i of the special facet across the ridge opposite e_i,
  // compared with their images under the coordinate permutations that keep
  // the keys in order; only the lexicographically least arrangement is
  // explored.
  bool symmetry_minimal() const {
    std::array<Vec, kMaxDim> nb{};
    for (std::size_t f = 1; f < facets_.size(); ++f) {
      const FacetRec& g = facets_[f];
      const int missing = std::countr_zero(~g.mask & ((Mask{1} << d_) - 1));
      int x = -1;
      for (std::size_t j = 0; j < d_; ++j)
        if (g.vid[j] >= static_cast<int>(d_)) x = g.vid[j];
      nb[static_cast<std::size_t>(missing)] = verts_[static_cast<std::size_t>(x)];
    }
    for (const auto& sigma : sh_.permutations) {
      bool keeps = true;
      for (std::size_t i = 0; i < d_ && keeps; ++i) keeps = keys_[static_cast<std::size_t>(sigma[i])] == keys_[i];
      if (!keeps) continue;
      // image tuple: position sigma[i] holds sigma applied to nb[i]
      std::array<Vec, kMaxDim> img{};
      for (std::size_t i = 0; i < d_; ++i) {
        Vec v{};
        for (std::size_t c = 0; c < d_; ++c) v[static_cast<std::size_t>(sigma[c])] = nb[i][c];
        img[static_cast<std::size_t>(sigma[i])] = v;
      }
      for (std::size_t i = 0; i < d_; ++i) {
        if (img[i] == nb[i]) continue;
        if (std::lexicographical_compare(img[i].begin(), img[i].begin() + static_cast<long>(d_), nb[i].begin(),
                                         nb[i].begin() + static_cast<long>(d_)))
          return false;
        break;
      }
    }
    return true;
  }

  void leaf() {
    Vec sum{};
    for (const auto& v : verts_)
      for (std::size_t i = 0; i < d_; ++i) sum[i] += v[i];
    for (std::size_t i = 0; i < d_; ++i)
      if (sum[i] < 0) return;
    ++leaves;
    std::vector<IntVector> vs;
    for (const auto& v : verts_) {
      IntVector w;
      for (std::size_t i = 0; i < d_; ++i) w.emplace_back(v[i]);
      vs.push_back(std::move(w));
    }
    std::vector<Facet> fs;
    for (const auto& g : facets_) {
      Facet f;
      for (std::size_t j = 0; j < d_; ++j) f.vertex_indices.push_back(static_cast<std::size_t>(g.vid[j]));
      std::sort(f.vertex_indices.begin(), f.vertex_indices.end());
      for (std::size_t i = 0; i < d_; ++i) f.normal.emplace_back(g.u[i]);
      f.offset = 1;
      fs.push_back(std::move(f));
    }
    found.insert(canonical_form(d_, vs, fs));
  }

  Shared& sh_;
  std::size_t d_;
  unsigned part_, parts_;
  std::vector<Vec> verts_;
  std::vector<FacetRec> facets_;
  std::map<Mask, int> open_;
  std::unordered_set<Mask> closed_;
  std::vector<std::vector<int>> survivors_;
  int level_sum_ = 0;
  bool neighbours_ok_ = true;
  std::array<Vec, kMaxDim> keys_{};
  std::array<bool, kMaxDim> has_key_{};
};

}  // namespace

std::optional<std::size_t> reference_smooth_fano_count(std::size_t d) {
  static const std::size_t counts[] = {0, 1, 5, 18, 124, 866, 7622, 72256, 749892};
  if (d >= 1 && d <= 8) return counts[d];
  return std::nullopt;
}

EnumerationResult enumerate_smooth_fano(std::size_t d, const EnumerationOptions& opts) {
  if (d < 2 || d > 6) throw std::invalid_argument("enumerate_smooth_fano: dimension must be between 2 and 6");
  Shared sh;
  sh.d = d;
  // d - 1 already reaches every class up to dimension 5; the status line says
  // whether that held for the run at hand.
  const long bound = opts.bound > 0 ? opts.bound : std::max(2L, static_cast<long>(d) - 1);
  sh.pool = candidate_pool(d, bound);
  sh.node_limit = opts.node_limit;
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  do sh.permutations.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  const unsigned jobs = std::max(1u, opts.jobs);
  std::vector<Worker> workers;
  workers.reserve(jobs);
  for (unsigned j = 0; j < jobs; ++j) workers.emplace_back(sh, j, jobs);
  if (jobs == 1) {
    workers.front().run();
  } else {
    std::vector<std::thread> threads;
    for (auto& w : workers) threads.emplace_back([&w] { w.run(); });
    for (auto& t : threads) t.join();
  }

  EnumerationResult res;
  res.dim = d;
  res.bound = bound;
  std::set<CanonicalForm> all;
  for (auto& w : workers) {
    all.insert(w.found.begin(), w.found.end());
    res.leaves += w.leaves;
  }
  res.classes.assign(all.begin(), all.end());
  res.nodes = sh.nodes.load();
  res.complete = !sh.stopped.load();
  res.reference_count = reference_smooth_fano_count(d);
  if (!res.complete) {
    res.status = "incomplete";
  } else if (res.reference_count && *res.reference_count == res.classes.size()) {
    res.status = "complete";
  } else {
    res.status = "bound-limited";
  }
  return res;
}

}  // namespace fanolattice
