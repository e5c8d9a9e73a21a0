#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "swolff/config.hpp"
#include "swolff/diagrams.hpp"
#include "swolff/report.hpp"
#include "swolff/verify.hpp"

using nlohmann::json;

namespace {

int emit(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

json trees_json(int order) {
  json out{{"order", order}};
  json counts = json::object();
  json admissible = json::object();
  json s_admissible = json::object();
  for (int n = 2; n <= order; ++n) {
    json list = json::array();
    for (const swolff::DiagramTree& t : swolff::enumerate_admissible(n)) {
      list.push_back({{"encoding", t.encoding()},
                      {"tree", t.to_string()},
                      {"weight", swolff::to_string(swolff::tree_weight(t))}});
    }
    counts[std::to_string(n)] = list.size();
    admissible[std::to_string(n)] = std::move(list);
  }
  for (int n = 1; n <= order; ++n) {
    json list = json::array();
    for (const swolff::DiagramTree& t : swolff::enumerate_s_admissible(n)) {
      list.push_back({{"encoding", t.encoding()},
                      {"tree", t.to_string()},
                      {"weight", swolff::to_string(swolff::s_tree_weight(t))}});
    }
    s_admissible[std::to_string(n)] = std::move(list);
  }
  out["counts"] = counts;
  out["admissible"] = admissible;
  out["s_admissible"] = s_admissible;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective Hamiltonians by Schrieffer-Wolff transformations"};
  app.require_subcommand(1);
  std::string output;
  double tolerance_scale = 1.0;

  auto* run_cmd = app.add_subcommand("run", "Run the tasks of a JSON config");
  std::string config_path;
  int run_order = 0;
  std::vector<double> epsilon;
  std::string timestamp;
  run_cmd->add_option("config", config_path, "Config file")->required();
  run_cmd->add_option("--order", run_order, "Override the perturbation order");
  run_cmd->add_option("--epsilon", epsilon, "Override epsilon (several values make a sweep)");
  run_cmd->add_option("--timestamp", timestamp, "Fixed report timestamp");

  auto* trees_cmd = app.add_subcommand("trees", "List admissible trees and their weights");
  int tree_order = 6;
  trees_cmd->add_option("--order", tree_order, "Largest tree size")->check(CLI::Range(2, 10));

  auto* verify_cmd = app.add_subcommand("verify", "Run randomized self-check suites");
  std::string suite = "all";
  std::uint64_t seed = 0;
  int verify_order = 3;
  verify_cmd->add_option("--suite", suite, "Suite name or 'all'");
  verify_cmd->add_option("--seed", seed, "Random seed");
  verify_cmd->add_option("--order", verify_order, "Perturbation order");
  verify_cmd->add_option("--timestamp", timestamp, "Fixed report timestamp");

  for (auto* sub : {run_cmd, trees_cmd, verify_cmd}) {
    sub->add_option("--output", output, "Write the JSON report here instead of stdout");
    sub->add_option("--tolerance-scale", tolerance_scale, "Multiply every pass/fail threshold")
        ->check(CLI::PositiveNumber);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*trees_cmd) return emit(trees_json(tree_order), output);

    if (*verify_cmd) {
      const auto results = swolff::run_verify(suite, seed, verify_order, tolerance_scale);
      json report = swolff::report_header("verify:" + suite, seed, tolerance_scale, timestamp);
      report["suite"] = suite;
      report["order"] = verify_order;
      bool passed = true;
      json suites = json::object();
      for (const auto& r : results) {
        json d = r.details;
        d["passed"] = r.passed;
        suites[r.name] = d;
        passed = passed && r.passed;
      }
      report["suites"] = suites;
      report["passed"] = passed;
      const int rc = emit(report, output);
      return rc != 0 ? rc : (passed ? 0 : 1);
    }

    swolff::RunConfig config = swolff::parse_config(config_path);
    if (run_order > 0 || !epsilon.empty()) {
      json doc = json::parse(config.canonical);
      if (run_order > 0) {
        config.order = run_order;
        doc["order"] = run_order;
      }
      if (!epsilon.empty()) {
        config.epsilon = epsilon;
        config.sweep = epsilon.size() > 1;
        doc["epsilon"] = config.sweep ? json(epsilon) : json(epsilon.front());
      }
      swolff::validate_config(config);
      config.canonical = doc.dump();
    }
    if (output.empty()) output = config.output;
    const swolff::RunResult result = swolff::run(config, {tolerance_scale, timestamp});
    const int rc = emit(result.report, output);
    return rc != 0 ? rc : (result.failed ? 1 : 0);
  } catch (const swolff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
