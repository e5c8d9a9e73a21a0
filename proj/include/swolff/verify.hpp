#pragma once

// Randomized self-check suites behind the `verify` command.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace swolff {

struct SuiteResult {
  std::string name;
  bool passed = false;
  nlohmann::json details;
};

const std::vector<std::string>& verify_suites();

/// Runs one suite, or every suite for "all". Thresholds are multiplied by
/// `tolerance_scale`. Throws ValidationError for an unknown name.
std::vector<SuiteResult> run_verify(const std::string& suite, std::uint64_t seed, int order = 3,
                                    double tolerance_scale = 1.0);

}  // namespace swolff
