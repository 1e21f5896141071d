// Command-line front end. Exit codes: 0 ok, 1 usage, 2 invalid input,
// 3 a checked theorem failed.

#include "fanolattice/classify.hpp"
#include "fanolattice/errors.hpp"
#include "fanolattice/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace fanolattice;

namespace {

enum Exit { Ok = 0, Usage = 1, Invalid = 2, Violation = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string show(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Entries from --source, or from the built-in enumeration.
std::vector<SourceEntry> load_source(std::size_t dim, const std::string& source, unsigned jobs) {
  if (!source.empty()) {
    auto r = ingest_database(source, dim);
    for (const auto& d : r.diagnostics)
      std::cerr << source << ":" << d.line << ": entry " << d.entry << (d.id ? " (id " + *d.id + ")" : "")
                << " skipped: " << to_string(d.kind) << ": " << d.message << "\n";
    if (!r.diagnostics.empty())
      std::cerr << r.entries.size() << " entries read, " << r.diagnostics.size() << " skipped\n";
    return std::move(r.entries);
  }
  // dimension 6 enumerates but does not finish in useful time; read a file instead
  if (dim < 2 || dim > 5)
    throw UsageError("no built-in source for dimension " + std::to_string(dim) + "; pass --source FILE");
  auto e = enumerate_smooth_fano(dim, {.bound = 0, .node_limit = 0, .jobs = jobs});
  std::cerr << "enumeration: " << e.classes.size() << " classes, status " << e.status << "\n";
  std::vector<SourceEntry> out;
  for (const auto& cf : e.classes) out.push_back({canonical_polytope(cf), std::nullopt});
  return out;
}

void print_rows(const std::vector<ClassificationRow>& rows) {
  std::cout << std::left << std::setw(4) << "dim" << std::setw(6) << "|V|" << std::setw(14) << "name" << std::setw(10)
            << "id" << std::setw(4) << "rho" << std::setw(10) << "|Aut|" << std::setw(4) << "t" << std::setw(4) << "k"
            << "barycentre 0\n";
  for (const auto& r : rows)
    std::cout << std::left << std::setw(4) << r.dim << std::setw(6) << r.vertex_count << std::setw(14)
              << r.catalog_name.value_or("-") << std::setw(10) << r.external_id.value_or("-") << std::setw(4)
              << r.picard_rank << std::setw(10) << r.aut_order << std::setw(4) << r.t << std::setw(4) << r.k
              << yes_no(r.barycentre_zero) << "\n";
}

int cmd_analyze(const std::string& file, bool json_only) {
  auto p = parse_polytope(read_file(file));
  auto a = analyze(p);
  if (!json_only) {
    auto line = [](const std::string& k, const std::string& v) {
      std::cout << std::left << std::setw(16) << k << v << "\n";
    };
    line("dimension", std::to_string(a.dim));
    line("vertices", std::to_string(a.vertex_count));
    line("smooth", yes_no(a.smooth));
    line("simplicial", yes_no(a.simplicial));
    line("reflexive", yes_no(a.reflexive));
    line("terminal", yes_no(a.terminal));
    line("picard rank", a.picard_rank ? std::to_string(*a.picard_rank) : "-");
    line("|Aut|", std::to_string(a.aut_order));
    line("t, k", std::to_string(a.t) + ", " + std::to_string(a.k));
    line("fibre-like", a.fibre_like ? yes_no(*a.fibre_like) : "undecided (not smooth)");
    line("barycentre", show(a.barycentre));
    line("K-stable", a.k_stable_applicable ? yes_no(a.barycentre_zero) : "criterion not applicable");
    line("catalog", a.catalog_name.value_or("-"));
    line("hash", a.canonical_hash);
  }
  std::cout << to_json_line(a) << "\n";
  if (a.fibre_like.value_or(false) && !a.barycentre_zero) {
    std::cerr << "fibre-like polytope with non-zero barycentre\n";
    return Violation;
  }
  return Ok;
}

int cmd_enumerate(std::size_t dim, long bound, std::uint64_t node_limit, const std::string& out,
                  const std::string& format, unsigned jobs) {
  if (dim < 2 || dim > 6) throw UsageError("enumerate supports dimensions 2 to 6");
  auto r = enumerate_smooth_fano(dim, {.bound = bound, .node_limit = node_limit, .jobs = jobs});
  std::ostringstream body;
  if (format == "jsonl") {
    for (const auto& cf : r.classes) body << to_json_line(cf) << "\n";
  } else {
    std::vector<SourceEntry> entries;
    for (const auto& cf : r.classes) entries.push_back({canonical_polytope(cf), std::nullopt});
    body << print_database(entries);
  }
  if (out.empty()) {
    std::cout << body.str();
    std::cerr << to_json_line(r) << "\n";
  } else {
    auto tmp = out + ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw IoError("cannot write " + out);
      f << body.str();
    }
    std::filesystem::rename(tmp, out);
    std::cout << to_json_line(r) << "\n";
  }
  return Ok;
}

int cmd_classify(std::size_t dim, const std::string& source, bool all, bool json, bool use_store, unsigned jobs) {
  auto entries = load_source(dim, source, jobs);
  std::optional<ResultStore> store;
  if (use_store) store.emplace(ResultStore::open_default(dim));
  ClassifyOptions opts{.jobs = jobs, .lookup = {}};
  if (store) opts.lookup = [&](const std::string& h) { return store->find(h); };
  auto rows = classify_all(entries, opts);
  if (store) {
    store->merge(rows);
    store->save();
  }
  std::vector<ClassificationRow> shown;
  for (const auto& r : rows)
    if (all || r.fibre_like) shown.push_back(r);
  if (json)
    for (const auto& r : shown) std::cout << to_json_line(r) << "\n";
  else
    print_rows(shown);
  std::cerr << rows.size() << " classes, " << std::count_if(rows.begin(), rows.end(), [](auto& r) { return r.fibre_like; })
            << " fibre-like\n";
  for (const auto& r : rows)
    if (r.fibre_like && !r.barycentre_zero) {
      std::cerr << "fibre-like class " << r.hash << " has non-zero barycentre\n";
      return Violation;
    }
  return Ok;
}

int cmd_check(std::size_t dim, const std::string& source, unsigned jobs) {
  auto entries = load_source(dim, source, jobs);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto rep = property_suite(entries[i].polytope);
    for (const auto& v : rep.violations) {
      ++bad;
      std::cerr << "entry " << i << (entries[i].id ? " (id " + *entries[i].id + ")" : "") << ": " << v << "\n";
    }
  }
  std::cout << "checked " << entries.size() << " polytopes, " << bad << " violations\n";
  return bad ? Violation : Ok;
}

int cmd_conjecture(std::size_t dim, const std::string& source, unsigned jobs) {
  auto entries = load_source(dim, source, jobs);
  std::vector<LatticePolytope> fl;
  for (const auto& e : entries)
    if (is_fibre_like(e.polytope)) fl.push_back(e.polytope);
  bool holds = conjecture_check(dim, fl);
  std::cout << "dimension " << dim << ": " << fl.size() << " fibre-like entries; only P^" << dim << " and (P^1)^"
            << dim << ": " << (holds ? "yes" : "no") << "\n";
  return Ok;
}

bool odd_prime(std::size_t d) {
  if (d < 3 || d % 2 == 0) return false;
  for (std::size_t f = 3; f * f <= d; f += 2)
    if (d % f == 0) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smooth toric Fano polytopes: analysis, enumeration, fibre-like classification"};
  app.require_subcommand(1);
  unsigned jobs = 1;
  app.add_option("--jobs,-j", jobs, "worker threads")->check(CLI::Range(1u, 256u));

  std::string file;
  bool json_only = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "report every invariant of one polytope");
  analyze_cmd->add_option("file", file, "polytope file")->required();
  analyze_cmd->add_flag("--json", json_only, "only the JSON record");

  std::size_t dim = 0;
  long bound = 0;
  std::uint64_t node_limit = 0;
  std::string out, format = "poly", source;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "canonical forms of all smooth Fano polytopes");
  enumerate_cmd->add_option("--dim,-d", dim)->required();
  enumerate_cmd->add_option("--bound", bound, "coordinate bound of the search (default: max(2, dim - 1))");
  enumerate_cmd->add_option("--node-limit", node_limit);
  enumerate_cmd->add_option("--out,-o", out);
  enumerate_cmd->add_option("--format", format)->check(CLI::IsMember({"poly", "jsonl"}));

  bool all = false, json = false, no_store = false;
  auto* classify_cmd = app.add_subcommand("classify", "fibre-like classes");
  classify_cmd->add_option("--dim,-d", dim)->required();
  classify_cmd->add_option("--source", source, "database file (blocks or one matrix per line)");
  classify_cmd->add_flag("--all", all, "list every class, not only fibre-like ones");
  classify_cmd->add_flag("--json", json, "JSON lines instead of a table");
  classify_cmd->add_flag("--no-store", no_store, "do not read or write $FANOLATTICE_CACHE");

  auto* check_cmd = app.add_subcommand("check", "structural property suite");
  check_cmd->add_option("--dim,-d", dim)->required();
  check_cmd->add_option("--source", source);

  auto* conjecture_cmd = app.add_subcommand("conjecture", "fibre-like classes in odd prime dimension");
  conjecture_cmd->add_option("--dim,-d", dim)->required();
  conjecture_cmd->add_option("--source", source);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Ok : Usage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(file, json_only);
    if (*enumerate_cmd) return cmd_enumerate(dim, bound, node_limit, out, format, jobs);
    if (*classify_cmd) return cmd_classify(dim, source, all, json, !no_store, jobs);
    if (*check_cmd) return cmd_check(dim, source, jobs);
    if (*conjecture_cmd) {
      if (!odd_prime(dim)) throw UsageError("conjecture: --dim must be an odd prime");
      return cmd_conjecture(dim, source, jobs);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return Violation;
  } catch (const ParseError& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return Invalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Invalid;
  }
  return Usage;
}
