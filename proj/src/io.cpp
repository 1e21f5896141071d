#include "fanolattice/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

namespace fanolattice {

namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view s) {
  auto h = s.find('#');
  return trim(h == std::string_view::npos ? s : s.substr(0, h));
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    auto nl = text.find('\n');
    out.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<Integer> parse_integer(std::string_view t) {
  std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (i == t.size()) return std::nullopt;
  for (std::size_t j = i; j < t.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(t[j]))) return std::nullopt;
  std::string s(t[0] == '+' ? t.substr(1) : t);
  return Integer(s);
}

std::optional<std::size_t> parse_count(std::string_view t) {
  auto v = parse_integer(t);
  if (!v || sgn(*v) < 0 || !v->fits_ulong_p()) return std::nullopt;
  return v->get_ui();
}

enum class Keyword { Id, Name, Dim, Vertices, None };

Keyword keyword_of(std::string_view line) {
  auto ts = tokens(line);
  if (ts.empty()) return Keyword::None;
  if (ts[0] == "id") return Keyword::Id;
  if (ts[0] == "name") return Keyword::Name;
  if (ts[0] == "dim") return Keyword::Dim;
  if (ts[0] == "vertices") return Keyword::Vertices;
  return Keyword::None;
}

std::string rest_after_keyword(std::string_view line) {
  auto ts = tokens(line);
  auto pos = line.find(ts[0]) + ts[0].size();
  return std::string(trim(line.substr(pos)));
}

ParseErrorKind parse_kind(PolytopeErrorKind k) {
  switch (k) {
    case PolytopeErrorKind::DimensionMismatch: return ParseErrorKind::DimensionMismatch;
    case PolytopeErrorKind::TooFewVertices: return ParseErrorKind::TooFewVertices;
    case PolytopeErrorKind::NonPrimitiveVertex: return ParseErrorKind::NonPrimitiveVertex;
    case PolytopeErrorKind::DuplicateVertex: return ParseErrorKind::DuplicateVertex;
    case PolytopeErrorKind::Degenerate: return ParseErrorKind::Degenerate;
    case PolytopeErrorKind::OriginNotInterior: return ParseErrorKind::OriginNotInterior;
    case PolytopeErrorKind::NotAVertex: return ParseErrorKind::NotAVertex;
    case PolytopeErrorKind::NonSimplicial: break;
  }
  return ParseErrorKind::Syntax;
}

std::string rational_string(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json optional_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

// Matrix-per-line entry: "[[..],[..]]" with an optional "<id>:" in front.
PolytopeFile read_matrix_line(std::string_view line, std::size_t ln, std::optional<std::size_t> dim) {
  PolytopeFile f;
  f.header_line = ln;
  auto bracket = line.find('[');
  auto prefix = trim(line.substr(0, bracket));
  if (!prefix.empty() && prefix.back() == ':') prefix.remove_suffix(1);
  prefix = trim(prefix);
  if (!prefix.empty()) f.id = std::string(prefix);
  json m;
  try {
    m = json::parse(line.substr(bracket));
  } catch (const json::exception&) {
    throw ParseError(ParseErrorKind::Syntax, ln, "unreadable matrix");
  }
  if (!m.is_array() || m.empty()) throw ParseError(ParseErrorKind::Syntax, ln, "expected a list of lists");
  std::vector<IntVector> rows;
  for (const auto& r : m) {
    if (!r.is_array() || r.empty()) throw ParseError(ParseErrorKind::Syntax, ln, "expected a list of lists");
    IntVector row;
    for (const auto& x : r) {
      if (x.is_number_integer()) {
        row.emplace_back(x.is_number_unsigned() ? std::to_string(x.get<unsigned long>()) : std::to_string(x.get<long>()));
      } else if (x.is_string() && parse_integer(x.get<std::string>())) {
        row.push_back(*parse_integer(x.get<std::string>()));
      } else {
        throw ParseError(ParseErrorKind::Syntax, ln, "matrix entries must be integers");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(ParseErrorKind::DimensionMismatch, ln, "ragged matrix");
    rows.push_back(std::move(row));
  }
  const std::size_t r = rows.size(), c = rows.front().size();
  bool by_row;
  if (dim) {
    if (c == *dim && r != *dim) by_row = true;
    else if (r == *dim && c != *dim) by_row = false;
    else
      throw ParseError(ParseErrorKind::DimensionMismatch, ln,
                       "a " + std::to_string(r) + "x" + std::to_string(c) + " matrix does not describe a " +
                           std::to_string(*dim) + "-polytope");
  } else {
    // a full-dimensional polytope has more vertices than coordinates
    if (r == c) throw ParseError(ParseErrorKind::TooFewVertices, ln, "square vertex matrix");
    by_row = c < r;
  }
  if (by_row) {
    f.dim = c;
    f.vertices = std::move(rows);
  } else {
    f.dim = r;
    for (std::size_t j = 0; j < c; ++j) {
      IntVector v(r);
      for (std::size_t i = 0; i < r; ++i) v[i] = rows[i][j];
      f.vertices.push_back(std::move(v));
    }
  }
  f.vertex_lines.assign(f.vertices.size(), ln);
  return f;
}

std::optional<std::string> block_id(const std::vector<std::string_view>& lines) {
  for (auto l : lines) {
    auto s = strip_comment(l);
    if (keyword_of(s) == Keyword::Id) return rest_after_keyword(s);
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::Syntax: return "syntax";
    case ParseErrorKind::RowCountMismatch: return "row-count-mismatch";
    case ParseErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ParseErrorKind::NonPrimitiveVertex: return "non-primitive-vertex";
    case ParseErrorKind::DuplicateVertex: return "duplicate-vertex";
    case ParseErrorKind::OriginNotInterior: return "origin-not-interior";
    case ParseErrorKind::Degenerate: return "degenerate";
    case ParseErrorKind::NotAVertex: return "not-a-vertex";
    case ParseErrorKind::TooFewVertices: return "too-few-vertices";
  }
  return "unknown";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + to_string(kind) + ": " + message),
      kind_(kind),
      line_(line),
      message_(message) {}

PolytopeFile read_polytope_file(std::string_view text, std::size_t first_line) {
  PolytopeFile f;
  std::optional<std::size_t> count;
  std::size_t dim_line = 0, last = first_line;
  bool have_dim = false;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t ln = first_line + i;
    auto s = strip_comment(lines[i]);
    if (s.empty()) continue;
    last = ln;
    auto ts = tokens(s);
    switch (keyword_of(s)) {
      case Keyword::Id:
      case Keyword::Name: {
        if (have_dim) throw ParseError(ParseErrorKind::Syntax, ln, "'" + std::string(ts[0]) + "' must precede 'dim'");
        auto value = rest_after_keyword(s);
        if (value.empty()) throw ParseError(ParseErrorKind::Syntax, ln, "empty " + std::string(ts[0]));
        (ts[0] == "id" ? f.id : f.name) = value;
        break;
      }
      case Keyword::Dim: {
        if (have_dim) throw ParseError(ParseErrorKind::Syntax, ln, "repeated 'dim'");
        auto d = ts.size() == 2 ? parse_count(ts[1]) : std::nullopt;
        if (!d || *d == 0) throw ParseError(ParseErrorKind::Syntax, ln, "expected 'dim <positive integer>'");
        f.dim = *d;
        have_dim = true;
        dim_line = ln;
        break;
      }
      case Keyword::Vertices: {
        if (!have_dim) throw ParseError(ParseErrorKind::Syntax, ln, "'vertices' before 'dim'");
        if (count) throw ParseError(ParseErrorKind::Syntax, ln, "repeated 'vertices'");
        count = ts.size() == 2 ? parse_count(ts[1]) : std::nullopt;
        if (!count) throw ParseError(ParseErrorKind::Syntax, ln, "expected 'vertices <integer>'");
        f.header_line = ln;
        break;
      }
      case Keyword::None: {
        if (!count) throw ParseError(ParseErrorKind::Syntax, ln, "vertex row before the header");
        if (f.vertices.size() == *count)
          throw ParseError(ParseErrorKind::RowCountMismatch, ln,
                           "more rows than the " + std::to_string(*count) + " announced");
        IntVector row;
        for (auto t : ts) {
          auto v = parse_integer(t);
          if (!v) throw ParseError(ParseErrorKind::Syntax, ln, "'" + std::string(t) + "' is not an integer");
          row.push_back(*v);
        }
        if (row.size() != f.dim)
          throw ParseError(ParseErrorKind::DimensionMismatch, ln,
                           "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(f.dim));
        f.vertices.push_back(std::move(row));
        f.vertex_lines.push_back(ln);
        break;
      }
    }
  }
  if (!have_dim) throw ParseError(ParseErrorKind::Syntax, last, "missing 'dim'");
  if (!count) throw ParseError(ParseErrorKind::Syntax, dim_line, "missing 'vertices'");
  if (f.vertices.size() != *count)
    throw ParseError(ParseErrorKind::RowCountMismatch, f.header_line,
                     std::to_string(*count) + " rows announced, " + std::to_string(f.vertices.size()) + " given");
  return f;
}

LatticePolytope validate(const PolytopeFile& f) {
  for (std::size_t i = 0; i < f.vertices.size(); ++i) {
    if (f.vertices[i].size() != f.dim)
      throw ParseError(ParseErrorKind::DimensionMismatch, f.vertex_lines[i], "wrong number of coordinates");
    if (!is_primitive(f.vertices[i]))
      throw ParseError(ParseErrorKind::NonPrimitiveVertex, f.vertex_lines[i],
                       to_string(f.vertices[i]) + " is not primitive");
  }
  std::map<IntVector, std::size_t> seen;
  for (std::size_t i = 0; i < f.vertices.size(); ++i) {
    auto [it, fresh] = seen.emplace(f.vertices[i], i);
    if (!fresh)
      throw ParseError(ParseErrorKind::DuplicateVertex, f.vertex_lines[i],
                       to_string(f.vertices[i]) + " repeats line " + std::to_string(f.vertex_lines[it->second]));
  }
  try {
    return LatticePolytope(f.vertices);
  } catch (const PolytopeError& e) {
    throw ParseError(parse_kind(e.kind()), f.header_line, e.what());
  }
}

LatticePolytope parse_polytope(std::string_view text) { return validate(read_polytope_file(text)); }

std::string print_polytope(const LatticePolytope& p, const std::optional<std::string>& id,
                           const std::optional<std::string>& name) {
  std::ostringstream os;
  if (id) os << "id " << *id << '\n';
  if (name) os << "name " << *name << '\n';
  os << "dim " << p.dim() << '\n' << "vertices " << p.vertex_count() << '\n';
  for (const auto& v : p.vertices()) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    os << '\n';
  }
  return os.str();
}

IngestResult ingest_text(std::string_view text, std::optional<std::size_t> dim) {
  IngestResult out;
  auto lines = split_lines(text);
  auto first = std::find_if(lines.begin(), lines.end(), [](auto l) { return !strip_comment(l).empty(); });
  if (first == lines.end()) return out;

  auto accept = [&](const PolytopeFile& f) {
    if (dim && f.dim != *dim)
      throw ParseError(ParseErrorKind::DimensionMismatch, f.header_line,
                       "entry has dimension " + std::to_string(f.dim) + ", expected " + std::to_string(*dim));
    out.entries.push_back({validate(f), f.id});
  };

  if (strip_comment(*first).find('[') != std::string_view::npos) {
    std::size_t entry = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      auto s = strip_comment(lines[i]);
      if (s.empty()) continue;
      try {
        if (s.find('[') == std::string_view::npos)
          throw ParseError(ParseErrorKind::Syntax, i + 1, "expected a vertex matrix");
        accept(read_matrix_line(s, i + 1, dim));
      } catch (const ParseError& e) {
        std::optional<std::string> id;
        auto prefix = trim(s.substr(0, s.find('[')));
        if (!prefix.empty() && prefix.back() == ':') prefix.remove_suffix(1);
        if (!trim(prefix).empty()) id = std::string(trim(prefix));
        out.diagnostics.push_back({entry, e.line(), id, e.kind(), e.message()});
      }
      ++entry;
    }
    return out;
  }

  // Split into blocks: a header keyword that cannot continue the current
  // block starts a new one.
  struct Block {
    std::size_t first_line;
    std::vector<std::string_view> lines;
  };
  std::vector<Block> blocks;
  int stage = -1;
  auto stage_of = [](Keyword k) {
    switch (k) {
      case Keyword::Id:
      case Keyword::Name: return 0;
      case Keyword::Dim: return 1;
      case Keyword::Vertices: return 2;
      case Keyword::None: return 3;
    }
    return 3;
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto s = strip_comment(lines[i]);
    if (!s.empty()) {
      const Keyword k = keyword_of(s);
      const int st = stage_of(k);
      const bool fresh = blocks.empty() || (k != Keyword::None && (st == 0 ? stage > 0 : st <= stage));
      if (fresh) {
        blocks.push_back({i + 1, {}});
        stage = -1;
      }
      stage = std::max(stage, st);
    }
    if (!blocks.empty()) blocks.back().lines.push_back(lines[i]);
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    try {
      std::string joined;
      for (auto l : blocks[b].lines) (joined += l) += '\n';
      accept(read_polytope_file(joined, blocks[b].first_line));
    } catch (const ParseError& e) {
      out.diagnostics.push_back({b, e.line(), block_id(blocks[b].lines), e.kind(), e.message()});
    }
  }
  return out;
}

IngestResult ingest_database(const std::filesystem::path& path, std::optional<std::size_t> dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return ingest_text(ss.str(), dim);
}

std::string print_database(const std::vector<SourceEntry>& entries) {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += '\n';
    out += print_polytope(entries[i].polytope, entries[i].id);
  }
  return out;
}

std::string to_json_line(const ClassificationRow& r) {
  json j;
  j["dim"] = r.dim;
  j["vertex_count"] = r.vertex_count;
  j["picard_rank"] = r.picard_rank;
  j["aut_order"] = r.aut_order;
  j["t"] = r.t;
  j["k"] = r.k;
  j["fibre_like"] = r.fibre_like;
  j["barycentre_zero"] = r.barycentre_zero;
  j["catalog_name"] = optional_string(r.catalog_name);
  j["external_id"] = optional_string(r.external_id);
  j["hash"] = r.hash;
  return j.dump();
}

ClassificationRow row_from_json_line(std::string_view line) {
  json j = json::parse(line);
  ClassificationRow r;
  r.dim = j.at("dim").get<std::size_t>();
  r.vertex_count = j.at("vertex_count").get<std::size_t>();
  r.picard_rank = j.at("picard_rank").get<std::size_t>();
  r.aut_order = j.at("aut_order").get<std::uint64_t>();
  r.t = j.at("t").get<std::size_t>();
  r.k = j.at("k").get<std::size_t>();
  r.fibre_like = j.at("fibre_like").get<bool>();
  r.barycentre_zero = j.at("barycentre_zero").get<bool>();
  if (!j.at("catalog_name").is_null()) r.catalog_name = j["catalog_name"].get<std::string>();
  if (!j.at("external_id").is_null()) r.external_id = j["external_id"].get<std::string>();
  r.hash = j.at("hash").get<std::string>();
  return r;
}

std::string to_json_line(const AnalysisReport& a) {
  json j;
  j["dim"] = a.dim;
  j["vertex_count"] = a.vertex_count;
  j["smooth"] = a.smooth;
  j["simplicial"] = a.simplicial;
  j["reflexive"] = a.reflexive;
  j["terminal"] = a.terminal;
  j["picard_rank"] = a.picard_rank ? json(*a.picard_rank) : json(nullptr);
  j["aut_order"] = a.aut_order;
  j["t"] = a.t;
  j["k"] = a.k;
  j["fibre_like"] = a.fibre_like ? json(*a.fibre_like) : json(nullptr);
  json bary = json::array();
  for (const auto& q : a.barycentre) bary.push_back(rational_string(q));
  j["barycentre"] = bary;
  json vs = json::array();
  for (const auto& z : a.vertex_sum) vs.push_back(integer_json(z));
  j["vertex_sum"] = vs;
  j["barycentre_zero"] = a.barycentre_zero;
  j["k_stable"] = a.k_stable_applicable ? json(a.barycentre_zero) : json(nullptr);
  j["canonical_hash"] = a.canonical_hash;
  j["catalog_name"] = optional_string(a.catalog_name);
  return j.dump();
}

std::string to_json_line(const EnumerationResult& r) {
  json j;
  j["dim"] = r.dim;
  j["bound"] = r.bound;
  j["classes"] = r.classes.size();
  j["reference_count"] = r.reference_count ? json(*r.reference_count) : json(nullptr);
  j["nodes"] = r.nodes;
  j["leaves"] = r.leaves;
  j["status"] = r.status;
  return j.dump();
}

std::string to_json_line(const CanonicalForm& cf) {
  json j;
  j["dim"] = cf.dim;
  j["vertex_count"] = cf.vertex_count;
  j["index"] = integer_json(cf.index);
  j["hash"] = cf.hash;
  json vs = json::array();
  for (const auto& v : cf.vertices) {
    json row = json::array();
    for (const auto& z : v) row.push_back(integer_json(z));
    vs.push_back(row);
  }
  j["vertices"] = vs;
  return j.dump();
}

ResultStore::ResultStore(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(file_);
  if (!in) return;
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (trim(line).empty()) continue;
    try {
      rows_.push_back(row_from_json_line(line));
    } catch (const std::exception& e) {
      throw IoError(file_.string() + ":" + std::to_string(ln) + ": bad record: " + e.what());
    }
  }
}

std::filesystem::path ResultStore::default_directory() {
  const char* env = std::getenv("FANOLATTICE_CACHE");
  if (env && *env) return env;
  return ".fanolattice-cache";
}

ResultStore ResultStore::open_default(std::size_t dim) {
  return ResultStore(default_directory() / ("classification-d" + std::to_string(dim) + ".jsonl"));
}

std::optional<ClassificationRow> ResultStore::find(const std::string& hash) const {
  for (const auto& r : rows_)
    if (r.hash == hash) return r;
  return std::nullopt;
}

std::size_t ResultStore::merge(const std::vector<ClassificationRow>& rows) {
  std::size_t added = 0;
  for (const auto& r : rows) {
    if (find(r.hash)) continue;
    rows_.push_back(r);
    ++added;
  }
  std::sort(rows_.begin(), rows_.end(), [](const ClassificationRow& a, const ClassificationRow& b) {
    return std::tie(a.dim, a.vertex_count, a.hash) < std::tie(b.dim, b.vertex_count, b.hash);
  });
  return added;
}

void ResultStore::save() const {
  if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
  auto tmp = file_;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    for (const auto& r : rows_) out << to_json_line(r) << '\n';
    out.flush();
    if (!out) throw IoError("error while writing " + tmp.string());
  }
  std::filesystem::rename(tmp, file_);
}

}  // namespace fanolattice
