#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gph/curve.hpp"
#include "gph/io.hpp"

namespace gph::cli {

// Entry point of the gphtool binary. Returns the process exit code:
// 0 success, 1 evaluation error, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "A:B:STEP" -> A, A+STEP, ... up to B (inclusive within round-off).
std::vector<double> parse_grid(const std::string& text);

// Model from a file path, or one of the embedded scenarios:
//   builtin:marriage, builtin:marriage-homogeneous,
//   builtin:marriage-competing, builtin:marriage-competing-homogeneous
ModelFile resolve_model(const std::string& text);

struct EvalRequest {
  std::string quantity;
  std::optional<std::size_t> state;  // 0-based
  std::vector<double> ages;
  std::vector<double> grid;
  std::optional<std::size_t> cause;   // 1-based
  std::optional<std::size_t> target;  // 0-based
  std::string info = "current";
  std::string info_path;
  std::optional<std::size_t> start;  // 0-based, endpoints regime
};

CurveGrid evaluate(const ModelFile& file, const EvalRequest& req);

// Curve bundle for the marriage/divorce scenario; returns (file name, curve) pairs.
std::vector<std::pair<std::string, CurveGrid>> marriage_bundle(bool competing);

}  // namespace gph::cli
