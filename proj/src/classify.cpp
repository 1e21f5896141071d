#include "fanolattice/classify.hpp"

#include "fanolattice/primitive.hpp"
#include "fanolattice/toric.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace fanolattice {

namespace {

bool is_zero(const std::vector<Integer>& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool odd_prime(std::size_t d) {
  if (d < 3 || d % 2 == 0) return false;
  for (std::size_t f = 3; f * f <= d; f += 2)
    if (d % f == 0) return false;
  return true;
}

}  // namespace

std::optional<std::string> catalog_name(const CanonicalForm& cf) {
  static std::mutex mu;
  static std::map<std::size_t, std::map<std::string, std::string>> by_dim;
  std::lock_guard<std::mutex> lock(mu);
  auto it = by_dim.find(cf.dim);
  if (it == by_dim.end()) {
    std::map<std::string, std::string> names;
    for (const auto& e : catalog(cf.dim)) names.emplace(canonical_form(e.polytope).bytes, e.name);
    it = by_dim.emplace(cf.dim, std::move(names)).first;
  }
  auto hit = it->second.find(cf.bytes);
  if (hit == it->second.end()) return std::nullopt;
  return hit->second;
}

AnalysisReport analyze(const LatticePolytope& p) {
  AnalysisReport r;
  r.dim = p.dim();
  r.vertex_count = p.vertex_count();
  const auto prof = toric_profile(p);
  r.smooth = prof.is_smooth;
  r.simplicial = prof.is_simplicial;
  r.reflexive = prof.is_reflexive;
  r.terminal = prof.is_terminal;
  if (r.simplicial) r.picard_rank = prof.picard_rank;
  const auto g = automorphism_group(p);
  const auto od = orbit_data(p, g);
  r.aut_order = g.order;
  r.t = od.t;
  r.k = od.k;
  if (r.smooth) r.fibre_like = od.invariant_ns_dim == 1;
  const auto ks = k_stability(p);
  r.barycentre = ks.barycentre;
  r.barycentre_zero = ks.is_zero;
  r.k_stable_applicable = ks.applicable;
  r.vertex_sum = vertex_sum(p);
  const auto cf = canonical_form(p);
  r.canonical_hash = cf.hash;
  r.catalog_name = catalog_name(cf);
  return r;
}

PropertyReport property_suite(const LatticePolytope& p) {
  PropertyReport r;
  r.smooth = is_smooth(p);
  if (!r.smooth) throw NotSmoothError("property_suite: input is not smooth");
  const auto g = automorphism_group(p);
  const auto od = orbit_data(p, g);
  r.fibre_like = od.invariant_ns_dim == 1;

  if (od.invariant_ns_dim < 1) {
    r.orbit_bound = false;
    r.violations.push_back("t - k = " + std::to_string(od.invariant_ns_dim) + " < 1");
  }
  r.burnside_checked = g.complete;
  if (g.complete && !burnside_check(g)) {
    r.burnside = false;
    r.violations.push_back("Burnside averages disagree with orbit count or fixed space");
  }
  for (const auto& c : primitive_collections(p)) {
    const auto rel = primitive_relation(p, c);
    if (rel.degree <= 0) {
      r.positive_degrees = false;
      r.violations.push_back("primitive relation of degree " + rel.degree.get_str());
    }
  }
  try {
    trivial_focus_collections(p);
  } catch (const InvariantViolation& e) {
    r.trivial_focus_exists = false;
    r.violations.push_back(e.what());
  }
  const bool bary_zero = k_stability(p).is_zero;
  if (r.fibre_like && !bary_zero) {
    r.main_theorem = false;
    r.violations.push_back("fibre-like with non-zero barycentre");
  }
  if (r.fibre_like) {
    if (!is_zero(vertex_sum(p))) {
      r.fibre_structure = false;
      r.violations.push_back("fibre-like with non-zero vertex sum");
    }
    if (!disjoint_collection_orbit(p, g)) {
      r.fibre_structure = false;
      r.violations.push_back("no trivial-focus collection whose orbit partitions the vertices");
    }
    if (!orbit_unions_in_faces(p, od)) {
      r.fibre_structure = false;
      r.violations.push_back("a union of k orbits spans no face");
    }
  }
  return r;
}

ClassificationRow classification_row(const LatticePolytope& p, const std::optional<std::string>& id) {
  ClassificationRow row;
  row.dim = p.dim();
  row.vertex_count = p.vertex_count();
  row.picard_rank = picard_rank(p);
  const auto g = automorphism_group(p);
  const auto od = orbit_data(p, g);
  row.aut_order = g.order;
  row.t = od.t;
  row.k = od.k;
  row.fibre_like = is_fibre_like(p, g);
  row.barycentre_zero = k_stability(p).is_zero;
  const auto cf = canonical_form(p);
  row.hash = cf.hash;
  row.catalog_name = catalog_name(cf);
  row.external_id = id;
  return row;
}

std::vector<ClassificationRow> classify_all(const std::vector<SourceEntry>& source, const ClassifyOptions& opts) {
  struct Item {
    const SourceEntry* entry;
    std::string hash;
  };
  std::vector<Item> items;
  {
    std::set<std::string> seen;
    for (const auto& e : source) {
      if (!is_smooth(e.polytope))
        throw NotSmoothError("classify: entry " + e.id.value_or("(no id)") + " is not smooth");
      auto cf = canonical_form(e.polytope);
      if (seen.insert(cf.bytes).second) items.push_back({&e, cf.hash});
    }
  }
  std::vector<ClassificationRow> rows(items.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
      try {
        std::optional<ClassificationRow> cached;
        if (opts.lookup) cached = opts.lookup(items[i].hash);
        rows[i] = cached ? *cached : classification_row(items[i].entry->polytope, items[i].entry->id);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = items.size();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, items.size()));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(rows.begin(), rows.end(), [](const ClassificationRow& a, const ClassificationRow& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.vertex_count != b.vertex_count) return a.vertex_count < b.vertex_count;
    return a.hash < b.hash;
  });
  return rows;
}

std::vector<ClassificationRow> classify_fibre_like(const std::vector<SourceEntry>& source, std::size_t* processed,
                                                   const ClassifyOptions& opts) {
  auto all = classify_all(source, opts);
  if (processed) *processed = all.size();
  std::vector<ClassificationRow> rows;
  for (auto& r : all)
    if (r.fibre_like) rows.push_back(std::move(r));
  return rows;
}

bool conjecture_check(std::size_t d, const std::vector<LatticePolytope>& fibre_like_classes) {
  if (!odd_prime(d)) throw std::invalid_argument("conjecture_check: " + std::to_string(d) + " is not an odd prime");
  std::set<std::string> have;
  for (const auto& p : fibre_like_classes) {
    if (p.dim() != d) throw std::invalid_argument("conjecture_check: class of the wrong dimension");
    have.insert(canonical_form(p).bytes);
  }
  LatticePolytope cube = projective_space(1);
  for (std::size_t i = 1; i < d; ++i) cube = product(cube, projective_space(1));
  const std::set<std::string> expected{canonical_form(projective_space(d)).bytes, canonical_form(cube).bytes};
  return have == expected;
}

}  // namespace fanolattice
