#include "gph/curve.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "gph/error.hpp"

namespace gph {

void CurveGrid::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw DimensionError("curve: row has " + std::to_string(row.size()) + " values for " +
                         std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

std::size_t CurveGrid::column_index(std::string_view name) const {
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (columns[k] == name) return k;
  throw DomainError("curve: no column named " + std::string(name));
}

std::vector<double> CurveGrid::column(std::string_view name) const {
  const std::size_t k = column_index(name);
  std::vector<double> out;
  for (const auto& r : rows) out.push_back(r[k]);
  return out;
}

void CurveGrid::check() const {
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (!(rows[k][0] > rows[k - 1][0]))
      throw DomainError("curve: abscissa not strictly increasing at row " + std::to_string(k + 1));
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, end);
}

double parse_double(std::string_view s, const std::string& where) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError(where, "not a number: '" + std::string(s) + "'");
  return x;
}

void write_csv(std::ostream& out, const CurveGrid& grid) {
  for (const auto& [k, v] : grid.metadata) out << "# " << k << ": " << v << '\n';
  for (std::size_t k = 0; k < grid.columns.size(); ++k)
    out << (k ? "," : "") << grid.columns[k];
  out << '\n';
  for (const auto& r : grid.rows) {
    for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << format_double(r[k]);
    out << '\n';
  }
}

std::string to_csv(const CurveGrid& grid) {
  std::ostringstream os;
  write_csv(os, grid);
  return os.str();
}

static std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

CurveGrid parse_csv(std::istream& in) {
  CurveGrid g;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body.erase(0, 1);
      const auto colon = body.find(": ");
      if (colon == std::string::npos)
        g.metadata.emplace_back(body, "");
      else
        g.metadata.emplace_back(body.substr(0, colon), body.substr(colon + 2));
      continue;
    }
    auto cells = split(line);
    if (!header) {
      g.columns = std::move(cells);
      header = true;
      continue;
    }
    if (cells.size() != g.columns.size())
      throw ParseError(where, "expected " + std::to_string(g.columns.size()) + " fields");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c, where));
    g.rows.push_back(std::move(row));
  }
  if (!header) throw ParseError("csv", "missing header row");
  return g;
}

CurveGrid parse_csv(const std::string& text) {
  std::istringstream is(text);
  return parse_csv(is);
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int k = 15; k >= 0; --k) {
    buf[k] = hex[h & 0xf];
    h >>= 4;
  }
  buf[16] = 0;
  return buf;
}

}  // namespace gph
