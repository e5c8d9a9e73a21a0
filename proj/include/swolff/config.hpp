#pragma once

// Run configuration read from JSON.
//
// Complex entries are numbers or [re, im] pairs; matrices are row-major
// nested arrays.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "swolff/exact_sw.hpp"
#include "swolff/lattice_model.hpp"

namespace swolff {

struct RawModel {
  Matrix h0;
  Matrix v;
  Interval window;
};

/// Task names in execution order.
const std::vector<std::string>& known_tasks();

struct RunConfig {
  std::optional<RawModel> raw;
  std::optional<SpinLattice> lattice;
  /// One value, or a strictly positive descending sweep.
  std::vector<double> epsilon;
  bool sweep = false;
  int order = 2;
  std::vector<std::string> tasks{"exact"};
  std::uint64_t seed = 0;
  std::string output;
  /// Canonical dump of the parsed document, used for the report hash.
  std::string canonical;

  /// H0, V and the window, for either kind of model.
  RawModel problem() const;
};

/// Throws ParseError (malformed JSON, wrong types or shapes, with line or
/// field context) or ValidationError (violated invariants).
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::filesystem::path& path);

/// Structural checks shared by the parser and command-line overrides.
void validate_config(const RunConfig& config);

Matrix matrix_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json complex_to_json(Complex z);

}  // namespace swolff
