#pragma once

#include <string>

#include "json.hpp"
#include "swolff/config.hpp"

namespace swolff {

struct RunOptions {
  /// Multiplies every pass/fail threshold; computations are unaffected.
  double tolerance_scale = 1.0;
  /// Report timestamp; the current UTC time when empty.
  std::string timestamp;
};

struct RunResult {
  nlohmann::json report;
  bool failed = false;
};

/// Executes the configured tasks in the order of known_tasks(). Task
/// errors are recorded in the report and mark the task failed.
RunResult run(const RunConfig& config, const RunOptions& options = {});

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

std::string utc_timestamp();

/// Header shared by `run` and `verify` output.
nlohmann::json report_header(const std::string& canonical, std::uint64_t seed, double tolerance_scale,
                             const std::string& timestamp);

}  // namespace swolff
