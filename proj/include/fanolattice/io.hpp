#pragma once

// Text formats and the on-disk result store.
//
// Polytope block:
//
//   id 5            (optional, free text)
//   name P^2        (optional, free text)
//   dim 2
//   vertices 3
//   1 0
//   0 1
//   -1 -1
//
// '#' starts a comment. A database file is either blocks back to back or one
// vertex matrix per line, e.g. `5: [[1,0,-1],[0,1,-1]]`, with the matrix given
// row-per-vertex or column-per-vertex (decided by its shape).

#include "fanolattice/classify.hpp"
#include "fanolattice/polytope.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fanolattice {

enum class ParseErrorKind {
  Syntax,
  RowCountMismatch,
  DimensionMismatch,
  NonPrimitiveVertex,
  DuplicateVertex,
  OriginNotInterior,
  Degenerate,
  NotAVertex,
  TooFewVertices,
};

std::string to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& message);
  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }  // 1-based
  const std::string& message() const { return message_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::string message_;
};

struct PolytopeFile {
  std::size_t dim = 0;
  std::vector<IntVector> vertices;
  std::vector<std::size_t> vertex_lines;
  std::size_t header_line = 0;
  std::optional<std::string> id;
  std::optional<std::string> name;
};

/// Reads one block without geometric validation. `first_line` numbers the
/// first line of `text`.
PolytopeFile read_polytope_file(std::string_view text, std::size_t first_line = 1);

/// Turns a block into a polytope; every failure is a ParseError carrying the
/// offending line.
LatticePolytope validate(const PolytopeFile& file);

LatticePolytope parse_polytope(std::string_view text);

std::string print_polytope(const LatticePolytope& p, const std::optional<std::string>& id = std::nullopt,
                           const std::optional<std::string>& name = std::nullopt);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IngestDiagnostic {
  std::size_t entry = 0;  // 0-based position in the file
  std::size_t line = 0;
  std::optional<std::string> id;
  ParseErrorKind kind = ParseErrorKind::Syntax;
  std::string message;
};

struct IngestResult {
  std::vector<SourceEntry> entries;
  std::vector<IngestDiagnostic> diagnostics;
};

/// Reads every entry it can; broken entries become diagnostics. With `dim`
/// set, entries of another dimension are rejected. Throws IoError only when
/// the file cannot be read.
IngestResult ingest_database(const std::filesystem::path& path, std::optional<std::size_t> dim = std::nullopt);
IngestResult ingest_text(std::string_view text, std::optional<std::size_t> dim = std::nullopt);

/// Writes entries as concatenated blocks, readable by ingest_text.
std::string print_database(const std::vector<SourceEntry>& entries);

/// Single-line JSON records. Field order is fixed and rationals are "p/q"
/// strings, so equal inputs give equal bytes.
std::string to_json_line(const ClassificationRow& row);
ClassificationRow row_from_json_line(std::string_view line);
std::string to_json_line(const AnalysisReport& report);
std::string to_json_line(const EnumerationResult& result);
std::string to_json_line(const CanonicalForm& cf);

/// Append-only set of classification rows keyed by canonical hash, kept as a
/// sorted JSON-lines file and replaced atomically on save.
class ResultStore {
 public:
  explicit ResultStore(std::filesystem::path file);

  /// $FANOLATTICE_CACHE, or ./.fanolattice-cache when unset.
  static std::filesystem::path default_directory();
  static ResultStore open_default(std::size_t dim);

  const std::filesystem::path& file() const { return file_; }
  const std::vector<ClassificationRow>& rows() const { return rows_; }
  std::optional<ClassificationRow> find(const std::string& hash) const;

  /// Adds rows whose hash is not present yet; returns how many were new.
  std::size_t merge(const std::vector<ClassificationRow>& rows);
  void save() const;

 private:
  std::filesystem::path file_;
  std::vector<ClassificationRow> rows_;
};

}  // namespace fanolattice
