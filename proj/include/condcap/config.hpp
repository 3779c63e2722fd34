#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "condcap/field.hpp"

namespace condcap {

inline constexpr int schema_version = 1;

struct GridRequest {
  GridBounds bounds{};
  int nx = 51;
  int ny = 51;
};

/// Parsed problem file. Curves may be listed in any order; plates keep
/// their relative order (matching `levels`) and so do walls.
struct ProblemConfig {
  CondenserProblem problem;
  int n = 256;
  SolverOptions solver;
  std::optional<GridRequest> grid;
  std::vector<Complex> points;
};

/// Throws ConfigError for malformed documents and GeometryError for
/// curves that fail validation.
ProblemConfig parse_config(const std::string& text);
ProblemConfig load_config(const std::filesystem::path& path);

/// JSON result of a capacity run. `seconds` is omitted when negative.
std::string result_document(const CondenserResult& r, double seconds = -1.0);

/// Round to 15 significant digits, the precision of all emitted numbers.
double round15(double x);

}  // namespace condcap
