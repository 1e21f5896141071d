#include "fanolattice/classify.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace fanolattice {

namespace {

template <class T>
T narrow(const Integer& x);

struct DoesNotFit {};

// Values are only compared after narrowing, never combined, so a checked
// conversion is all the long path needs.
template <>
long narrow<long>(const Integer& x) {
  if (!x.fits_slong_p()) throw DoesNotFit{};
  return x.get_si();
}

template <>
Integer narrow<Integer>(const Integer& x) {
  return x;
}

Integer widen(long x) { return Integer(x); }
Integer widen(const Integer& x) { return x; }

// Ranks keys by sorted order, so equal keys share a colour and the colour
// numbering does not depend on input order.
template <class Key>
std::vector<int> rank_keys(const std::vector<Key>& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
  return out;
}

std::string sha256_prefix(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < 8; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

struct Base {
  std::vector<std::size_t> order;  // basis vertices, sorted by colour
  Integer index;
};

template <class T>
class Canonicalizer {
 public:
  Canonicalizer(std::size_t n, const std::vector<IntVector>& verts, const std::vector<Facet>& facets)
      : n_(n), m_(verts.size()), verts_(verts), facets_(facets) {}

  CanonicalForm run() {
    colour();
    collect_bases();
    for (const auto& b : bases_) try_base(b);
    return finish();
  }

 private:
  void colour() {
    const std::size_t f = facets_.size();
    pair_.assign(f, std::vector<T>(m_));
    std::vector<T> offset(f);
    for (std::size_t i = 0; i < f; ++i) {
      offset[i] = narrow<T>(facets_[i].offset.get_num());
      for (std::size_t v = 0; v < m_; ++v) pair_[i][v] = narrow<T>(dot(facets_[i].normal, verts_[v]));
    }
    vcol_.assign(m_, 0);
    std::vector<int> fcol(f, 0);
    {
      std::vector<T> o = offset;
      fcol = rank_keys(o);
    }
    std::size_t classes = 0;
    for (int round = 0; round < 8; ++round) {
      std::vector<std::vector<std::pair<T, int>>> vkeys(m_);
      for (std::size_t v = 0; v < m_; ++v) {
        for (std::size_t i = 0; i < f; ++i) vkeys[v].emplace_back(pair_[i][v], fcol[i]);
        std::sort(vkeys[v].begin(), vkeys[v].end());
      }
      std::vector<std::pair<int, std::vector<std::pair<T, int>>>> vk2(m_);
      for (std::size_t v = 0; v < m_; ++v) vk2[v] = {vcol_[v], std::move(vkeys[v])};
      vcol_ = rank_keys(vk2);
      std::vector<std::pair<int, std::vector<std::pair<T, int>>>> fkeys(f);
      for (std::size_t i = 0; i < f; ++i) {
        fkeys[i].first = fcol[i];
        for (std::size_t v = 0; v < m_; ++v) fkeys[i].second.emplace_back(pair_[i][v], vcol_[v]);
        std::sort(fkeys[i].second.begin(), fkeys[i].second.end());
      }
      fcol = rank_keys(fkeys);
      std::size_t now = static_cast<std::size_t>(*std::max_element(vcol_.begin(), vcol_.end())) + 1 +
                        static_cast<std::size_t>(*std::max_element(fcol.begin(), fcol.end())) + 1;
      if (now == classes) break;
      classes = now;
    }
    fcol_ = std::move(fcol);
  }

  void collect_bases() {
    const int best_facet = *std::min_element(fcol_.begin(), fcol_.end());
    std::vector<std::pair<std::vector<int>, Integer>> keys;
    std::vector<Base> all;
    for (std::size_t i = 0; i < facets_.size(); ++i) {
      if (fcol_[i] != best_facet) continue;
      const auto& idx = facets_[i].vertex_indices;
      std::vector<std::size_t> pick;
      std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (pick.size() == n_) {
          std::vector<IntVector> cols;
          for (auto v : pick) cols.push_back(verts_[v]);
          Integer det = abs(determinant(IntMatrix::from_columns(cols, n_)));
          if (sgn(det) == 0) return;
          Base b{pick, det};
          std::stable_sort(b.order.begin(), b.order.end(),
                           [&](std::size_t a, std::size_t c) { return vcol_[a] < vcol_[c]; });
          std::vector<int> colours;
          for (auto v : b.order) colours.push_back(vcol_[v]);
          keys.emplace_back(std::move(colours), det);
          all.push_back(std::move(b));
          return;
        }
        for (std::size_t k = start; k < idx.size(); ++k) {
          pick.push_back(idx[k]);
          rec(k + 1);
          pick.pop_back();
        }
      };
      rec(0);
    }
    const auto best = *std::min_element(keys.begin(), keys.end());
    for (std::size_t i = 0; i < all.size(); ++i)
      if (keys[i] == best) bases_.push_back(std::move(all[i]));
  }

  void try_base(const Base& b) {
    std::vector<IntVector> cols;
    for (auto v : b.order) cols.push_back(verts_[v]);
    const RatMatrix inv = inverse(to_rational(IntMatrix::from_columns(cols, n_)));
    IntMatrix scaled(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        Rational x = inv(i, j) * b.index;
        scaled(i, j) = x.get_num();
      }
    // image[i][v] = i-th coordinate of vertex v
    std::vector<std::vector<T>> image(n_, std::vector<T>(m_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t v = 0; v < m_; ++v) {
        Integer s = 0;
        for (std::size_t j = 0; j < n_; ++j) s += scaled(i, j) * verts_[v][j];
        image[i][v] = narrow<T>(s);
      }
    // permutations within blocks of equal colour
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t i = 0; i < n_;) {
      std::size_t j = i;
      while (j < n_ && vcol_[b.order[j]] == vcol_[b.order[i]]) ++j;
      blocks.emplace_back(i, j);
      i = j;
    }
    std::vector<std::size_t> perm(n_);
    for (std::size_t i = 0; i < n_; ++i) perm[i] = i;
    std::vector<std::vector<T>> rows(m_, std::vector<T>(n_));
    while (true) {
      for (std::size_t v = 0; v < m_; ++v)
        for (std::size_t i = 0; i < n_; ++i) rows[v][i] = image[perm[i]][v];
      std::sort(rows.begin(), rows.end());
      IntMatrix lattice;
      if (b.index != 1) {
        // lattice generated by the columns of the row-permuted scaled inverse
        IntMatrix t(n_, n_);
        for (std::size_t i = 0; i < n_; ++i)
          for (std::size_t j = 0; j < n_; ++j) t(j, i) = scaled(perm[i], j);
        lattice = hermite_normal_form(t).hermite;
      }
      bool better = !have_;
      if (have_) {
        if (b.index != best_index_) {
          better = b.index < best_index_;
        } else if (rows != best_rows_) {
          better = rows < best_rows_;
        } else {
          better = lattice_less(lattice, best_lattice_);
        }
      }
      if (better) {
        have_ = true;
        best_rows_ = rows;
        best_index_ = b.index;
        best_lattice_ = lattice;
      }
      // next permutation: odometer over blocks
      std::size_t k = blocks.size();
      bool advanced = false;
      while (k > 0) {
        --k;
        auto first = perm.begin() + static_cast<long>(blocks[k].first);
        auto last = perm.begin() + static_cast<long>(blocks[k].second);
        if (std::next_permutation(first, last)) {
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }

  static bool lattice_less(const IntMatrix& a, const IntMatrix& b) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
    return false;
  }

  CanonicalForm finish() {
    CanonicalForm cf;
    cf.dim = n_;
    cf.vertex_count = m_;
    cf.index = best_index_;
    cf.lattice = best_lattice_;
    std::ostringstream os;
    os << "n=" << n_ << ";m=" << m_ << ";i=" << best_index_ << ";L=";
    for (std::size_t i = 0; i < cf.lattice.rows(); ++i) {
      os << (i ? "|" : "");
      for (std::size_t j = 0; j < cf.lattice.cols(); ++j) os << (j ? "," : "") << cf.lattice(i, j);
    }
    os << ";V=";
    for (std::size_t v = 0; v < m_; ++v) {
      IntVector row;
      os << (v ? "|" : "");
      for (std::size_t i = 0; i < n_; ++i) {
        row.push_back(widen(best_rows_[v][i]));
        os << (i ? "," : "") << best_rows_[v][i];
      }
      cf.vertices.push_back(std::move(row));
    }
    cf.bytes = os.str();
    cf.hash = sha256_prefix(cf.bytes);
    return cf;
  }

  std::size_t n_, m_;
  const std::vector<IntVector>& verts_;
  const std::vector<Facet>& facets_;
  std::vector<std::vector<T>> pair_;
  std::vector<int> vcol_, fcol_;
  std::vector<Base> bases_;
  bool have_ = false;
  std::vector<std::vector<T>> best_rows_;
  Integer best_index_;
  IntMatrix best_lattice_;
};

}  // namespace

CanonicalForm canonical_form(std::size_t dim, const std::vector<IntVector>& vertices, const std::vector<Facet>& facets) {
  try {
    return Canonicalizer<long>(dim, vertices, facets).run();
  } catch (const DoesNotFit&) {
    return Canonicalizer<Integer>(dim, vertices, facets).run();
  }
}

CanonicalForm canonical_form(const LatticePolytope& p) { return canonical_form(p.dim(), p.vertices(), p.facets()); }

LatticePolytope canonical_polytope(const CanonicalForm& cf) {
  if (cf.index != 1) throw std::invalid_argument("canonical_polytope: the canonical basis is not unimodular");
  return LatticePolytope(cf.vertices);
}

}  // namespace fanolattice
