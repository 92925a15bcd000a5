#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gph {

// Sampled curve: first column is the abscissa (strictly increasing), the rest are
// values. Metadata lines are written as "# key: value".
struct CurveGrid {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_row(std::vector<double> row);
  std::size_t column_index(std::string_view name) const;
  std::vector<double> column(std::string_view name) const;
  // Throws DomainError if the abscissa is not strictly increasing.
  void check() const;
};

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);
double parse_double(std::string_view s, const std::string& where);

void write_csv(std::ostream& out, const CurveGrid& grid);
std::string to_csv(const CurveGrid& grid);
CurveGrid parse_csv(std::istream& in);
CurveGrid parse_csv(const std::string& text);

// FNV-1a 64-bit digest, hex-encoded; used to tag outputs with the model they came from.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace gph
