#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gph/mixture.hpp"

namespace gph {

// Model file: JSON object
//   schema_version  1 (required)
//   m, p            transient / absorbing counts
//   T               m x m, nested rows or flat row-major
//   D               m x p, nested rows or flat row-major
//   pi, psi, s0     length m
//   labels          optional, m + p names
//   repair_diagonal optional bool: set diag(T) to minus the off-diagonal row sum
struct ModelFile {
  MixtureModel model;
  std::vector<std::string> labels;
};

constexpr int kModelSchemaVersion = 1;

ModelFile parse_model(const std::string& text, const std::string& source = "model");
ModelFile load_model(const std::string& path);
std::string dump_model(const ModelFile& file);
// Digest of the canonical dump; stable across formatting of the input file.
std::string model_hash(const ModelFile& file);

// Path line: comma-separated tokens "state:duration" with 1-based states. A final bare
// "state" is the absorbing state reached; otherwise the last sojourn is censored.
//   1:0.4,2:1.3,5
std::string format_path(const PathRecord& path);
PathRecord parse_path(std::string_view line, std::size_t m, std::size_t p,
                      const std::string& where = "path");
// One path per line; blank lines and lines starting with '#' are skipped.
std::vector<PathRecord> read_paths(std::istream& in, std::size_t m, std::size_t p);
void write_paths(std::ostream& out, const std::vector<PathRecord>& paths);

}  // namespace gph
