#include "fanolattice/catalog.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace fanolattice {

LatticePolytope projective_space(std::size_t n) {
  if (n < 1) throw std::invalid_argument("projective_space: n must be at least 1");
  std::vector<IntVector> vs;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    vs.push_back(std::move(e));
  }
  vs.push_back(IntVector(n, Integer(-1)));
  return LatticePolytope(std::move(vs));
}

LatticePolytope product(const LatticePolytope& p, const LatticePolytope& q) {
  const std::size_t a = p.dim(), b = q.dim();
  std::vector<IntVector> vs;
  for (const auto& v : p.vertices()) {
    IntVector w(a + b);
    std::copy(v.begin(), v.end(), w.begin());
    vs.push_back(std::move(w));
  }
  for (const auto& v : q.vertices()) {
    IntVector w(a + b);
    std::copy(v.begin(), v.end(), w.begin() + static_cast<long>(a));
    vs.push_back(std::move(w));
  }
  return LatticePolytope(std::move(vs));
}

LatticePolytope del_pezzo_polytope(std::size_t d) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("del_pezzo_polytope: d must be even and at least 2");
  std::vector<IntVector> vs;
  for (std::size_t i = 0; i < d; ++i)
    for (int s : {1, -1}) {
      IntVector e(d);
      e[i] = s;
      vs.push_back(std::move(e));
    }
  vs.push_back(IntVector(d, Integer(1)));
  vs.push_back(IntVector(d, Integer(-1)));
  return LatticePolytope(std::move(vs));
}

LatticePolytope weighted_projective(const std::vector<long>& weights) {
  const std::size_t m = weights.size();
  if (m < 2) throw std::invalid_argument("weighted_projective: need at least two weights");
  for (long q : weights)
    if (q <= 0) throw std::invalid_argument("weighted_projective: weights must be positive");
  for (std::size_t skip = 0; skip < m; ++skip) {
    long g = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (i != skip) g = std::gcd(g, weights[i]);
    if (g != 1)
      throw std::invalid_argument("weighted_projective: weights are not well-formed (some " +
                                  std::to_string(m - 1) + " of them share a factor)");
  }
  IntMatrix q(m, 1);
  for (std::size_t i = 0; i < m; ++i) q(i, 0) = weights[i];
  const auto hnf = hermite_normal_form(q);
  // hnf.hermite is e_1 since gcd = 1
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < m; ++i) {
    IntVector v;
    for (std::size_t r = 1; r < m; ++r) v.push_back(hnf.transform(r, i));
    rays.push_back(std::move(v));
  }
  return LatticePolytope(std::move(rays));
}

namespace {

struct Factor {
  bool del_pezzo;
  std::size_t dim;
  std::string name() const { return (del_pezzo ? "V_" : "P^") + std::to_string(dim); }
  LatticePolytope build() const { return del_pezzo ? del_pezzo_polytope(dim) : projective_space(dim); }
};

std::string product_name(const std::vector<Factor>& fs) {
  std::string out;
  for (std::size_t i = 0; i < fs.size();) {
    std::size_t j = i;
    while (j < fs.size() && fs[j].del_pezzo == fs[i].del_pezzo && fs[j].dim == fs[i].dim) ++j;
    const std::size_t mult = j - i;
    std::string part;
    if (mult == 1) {
      part = fs[i].name();
    } else if (mult == 2) {
      part = fs[i].name() + " x " + fs[i].name();
    } else {
      part = "(" + fs[i].name() + ")^" + std::to_string(mult);
    }
    out += (out.empty() ? "" : " x ") + part;
    i = j;
  }
  return out;
}

}  // namespace

std::vector<CatalogEntry> catalog(std::size_t d) {
  if (d < 1) throw std::invalid_argument("catalog: dimension must be positive");
  std::vector<Factor> kinds;
  for (std::size_t a = 1; a <= d; ++a) {
    kinds.push_back({false, a});
    if (a % 2 == 0) kinds.push_back({true, a});
  }
  std::vector<CatalogEntry> out;
  std::vector<Factor> chosen;
  // non-decreasing sequences of kinds whose dimensions sum to d
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t left) {
    if (left == 0) {
      LatticePolytope p = chosen.front().build();
      for (std::size_t i = 1; i < chosen.size(); ++i) p = product(p, chosen[i].build());
      out.push_back({product_name(chosen), std::move(p)});
      return;
    }
    for (std::size_t k = start; k < kinds.size(); ++k) {
      if (kinds[k].dim > left) continue;
      chosen.push_back(kinds[k]);
      rec(k, left - kinds[k].dim);
      chosen.pop_back();
    }
  };
  rec(0, d);
  return out;
}

}  // namespace fanolattice
