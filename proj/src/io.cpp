#include "gph/io.hpp"

#include <fstream>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "gph/curve.hpp"
#include "gph/error.hpp"

namespace gph {

using nlohmann::json;

namespace {

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(key, "required field is missing");
  return doc.at(key);
}

std::size_t count_field(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ParseError(key, "must be a positive integer");
  return v.get<std::size_t>();
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where, "expected a number");
  return v.get<double>();
}

Vector vector_field(const json& doc, const char* key, std::size_t n) {
  const json& v = field(doc, key);
  if (!v.is_array()) throw ParseError(key, "expected an array");
  if (v.size() != n)
    throw ParseError(key, "expected " + std::to_string(n) + " entries, found " +
                              std::to_string(v.size()));
  Vector out;
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(number(v[k], std::string(key) + "[" + std::to_string(k + 1) + "]"));
  return out;
}

Matrix matrix_field(const json& doc, const char* key, std::size_t rows, std::size_t cols) {
  const json& v = field(doc, key);
  if (!v.is_array()) throw ParseError(key, "expected an array");
  std::vector<double> entries;
  if (!v.empty() && v[0].is_array()) {
    if (v.size() != rows)
      throw ParseError(key, "expected " + std::to_string(rows) + " rows, found " +
                                std::to_string(v.size()));
    for (std::size_t i = 0; i < rows; ++i) {
      const std::string rw = std::string(key) + "[" + std::to_string(i + 1) + "]";
      if (!v[i].is_array() || v[i].size() != cols)
        throw ParseError(rw, "expected a row of " + std::to_string(cols) + " numbers");
      for (std::size_t j = 0; j < cols; ++j)
        entries.push_back(number(v[i][j], rw + "[" + std::to_string(j + 1) + "]"));
    }
  } else {
    if (v.size() != rows * cols)
      throw ParseError(key, "expected " + std::to_string(rows * cols) + " row-major entries");
    for (std::size_t k = 0; k < v.size(); ++k)
      entries.push_back(number(v[k], std::string(key) + "[" + std::to_string(k + 1) + "]"));
  }
  return Matrix(rows, cols, std::move(entries));
}

json matrix_json(const Matrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
  return rows;
}

}  // namespace

ModelFile parse_model(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, e.what());
  }
  if (!doc.is_object()) throw ParseError(source, "top level must be an object");
  try {
    const json& ver = field(doc, "schema_version");
    if (!ver.is_number_integer() || ver.get<int>() != kModelSchemaVersion)
      throw ParseError("schema_version", "unsupported (expected " +
                                             std::to_string(kModelSchemaVersion) + ")");
    const std::size_t m = count_field(doc, "m"), p = count_field(doc, "p");
    Matrix T = matrix_field(doc, "T", m, m);
    Matrix D = matrix_field(doc, "D", m, p);
    ValidationOptions opt;
    if (doc.contains("repair_diagonal")) opt.repair_diagonal = doc["repair_diagonal"].get<bool>();
    Generator g;
    try {
      g = validate_generator(T, D, opt);
    } catch (const Error& e) {
      throw ParseError("T/D", e.what());
    }
    Vector pi = vector_field(doc, "pi", m);
    Vector psi = vector_field(doc, "psi", m);
    Vector s0 = vector_field(doc, "s0", m);
    std::vector<std::string> labels;
    if (doc.contains("labels")) {
      const json& l = doc["labels"];
      if (!l.is_array() || l.size() != m + p)
        throw ParseError("labels", "expected " + std::to_string(m + p) + " names");
      for (const auto& x : l) {
        if (!x.is_string()) throw ParseError("labels", "names must be strings");
        labels.push_back(x.get<std::string>());
      }
    } else {
      for (std::size_t k = 0; k < m + p; ++k) labels.push_back(std::to_string(k + 1));
    }
    try {
      return ModelFile{MixtureModel(std::move(g), psi, pi, s0), std::move(labels)};
    } catch (const Error& e) {
      throw ParseError("pi/psi/s0", e.what());
    }
  } catch (const json::exception& e) {
    throw ParseError(source, e.what());
  }
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_model(ss.str(), path);
  } catch (const ParseError& e) {
    if (e.where() == path) throw;
    throw ParseError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

std::string dump_model(const ModelFile& file) {
  const auto& mm = file.model;
  json doc;
  doc["schema_version"] = kModelSchemaVersion;
  doc["m"] = mm.m();
  doc["p"] = mm.p();
  doc["T"] = matrix_json(mm.T());
  doc["D"] = matrix_json(mm.D());
  doc["pi"] = mm.pi();
  doc["psi"] = mm.psi();
  doc["s0"] = mm.s0();
  doc["labels"] = file.labels;
  return doc.dump(2) + "\n";
}

std::string model_hash(const ModelFile& file) { return fnv1a_hex(dump_model(file)); }

// ---- paths -----------------------------------------------------------------

std::string format_path(const PathRecord& path) {
  std::string s;
  for (std::size_t k = 0; k < path.visits.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(path.visits[k].state + 1) + ":" + format_double(path.visits[k].duration);
  }
  if (path.absorbed) s += "," + std::to_string(*path.absorbed + 1);
  return s;
}

static std::size_t parse_state(std::string_view tok, std::size_t n, const std::string& where) {
  std::size_t v = 0;
  while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
  while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\r')) tok.remove_suffix(1);
  if (tok.empty()) throw ParseError(where, "empty state");
  for (char c : tok) {
    if (c < '0' || c > '9') throw ParseError(where, "bad state '" + std::string(tok) + "'");
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  if (v < 1 || v > n) throw ParseError(where, "state " + std::string(tok) + " out of range");
  return v - 1;
}

PathRecord parse_path(std::string_view line, std::size_t m, std::size_t p,
                      const std::string& where) {
  PathRecord rec;
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const auto comma = line.find(',', pos);
    const auto end = comma == std::string_view::npos ? line.size() : comma;
    tokens.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const std::string w = where + " token " + std::to_string(k + 1);
    const auto tok = tokens[k];
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos) {
      if (k + 1 != tokens.size()) throw ParseError(w, "only the last token may omit a duration");
      const std::size_t s = parse_state(tok, m + p, w);
      if (s < m) throw ParseError(w, "terminal token without duration must be absorbing");
      rec.absorbed = s;
      continue;
    }
    const std::size_t s = parse_state(tok.substr(0, colon), m + p, w);
    if (s >= m) throw ParseError(w, "absorbing state cannot carry a duration");
    rec.visits.push_back({s, parse_double(tok.substr(colon + 1), w)});
  }
  try {
    rec.validate(m, p);
  } catch (const DomainError& e) {
    throw ParseError(where, e.what());
  }
  return rec;
}

std::vector<PathRecord> read_paths(std::istream& in, std::size_t m, std::size_t p) {
  std::vector<PathRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_path(line, m, p, "line " + std::to_string(lineno)));
  }
  return out;
}

void write_paths(std::ostream& out, const std::vector<PathRecord>& paths) {
  for (const auto& p : paths) out << format_path(p) << '\n';
}

}  // namespace gph
