#include "doctest.h"
#include "oracles.hpp"
#include "swolff/config.hpp"
#include "swolff/report.hpp"

using namespace swolff;

namespace {

const char* two_level = R"({
  "model": {"type": "raw", "H0": [[0, 0], [0, 2]], "V": [[0, 1], [1, 0]], "window": [-0.5, 0.5]},
  "epsilon": 0.2
})";

std::string chain_config(const std::string& tasks, const std::string& epsilon) {
  return std::string(R"({"model": {"type": "lattice",
    "sites": [{"h0": [[0, 0], [0, 1]]}, {"h0": [[0, 0], [0, 1]]}, {"h0": [[0, 0], [0, 1]]}],
    "edges": [{"sites": [0, 1], "V": [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]},
              {"sites": [1, 2], "V": [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]}]},
    "tasks": )") + tasks + R"(, "epsilon": )" + epsilon + "}";
}

std::string error_message(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal raw config") {
  const RunConfig c = parse_config_text(two_level);
  CHECK(c.tasks == std::vector<std::string>{"exact"});
  CHECK(c.raw.has_value());
  CHECK(c.epsilon == std::vector<double>{0.2});
  CHECK_FALSE(c.sweep);
}

TEST_CASE("lattice config") {
  const RunConfig c = parse_config_text(chain_config(R"(["local"])", "0.1"));
  REQUIRE(c.lattice.has_value());
  CHECK(c.lattice->edges().size() == 2);
  CHECK(c.problem().h0.rows() == 8);
}

TEST_CASE("complex entries") {
  const RunConfig c = parse_config_text(R"({"model": {"type": "raw", "H0": [[0, 0], [0, 2]],
    "V": [[0, [0, -1]], [[0, 1], 0]], "window": [-0.5, 0.5]}})");
  CHECK(std::abs(c.raw->v(0, 1) - Complex(0, -1)) < 1e-15);
}

TEST_CASE("rejections") {
  const std::string nonherm = R"({"model": {"type": "raw", "H0": [[0, 0], [0, 2]], "V": [[0, 1], [2, 0]],
    "window": [-0.5, 0.5]}})";
  CHECK(error_message(nonherm) == "ValidationError: V not hermitian");
  CHECK(error_message("{\n  \"model\": [1,\n}").find("ParseError: line 3") == 0);
  CHECK(error_message(R"({"model": {"type": "raw"}})").find("model") != std::string::npos);
  CHECK(error_message(chain_config(R"(["local"])", "[0.1, 0.2]")).find("ValidationError") == 0);
  CHECK(error_message(chain_config(R"(["bogus"])", "0.1")).find("ValidationError") == 0);
  CHECK(error_message(R"({"model": {"type": "raw", "H0": [[0, 0], [0, 2]], "V": [[0, 1, 0], [1, 0, 0]],
    "window": [-0.5, 0.5]}})").find("Error") != std::string::npos);
}

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("two-level exact report") {
  const RunResult r = run(parse_config_text(two_level), {1.0, "t"});
  CHECK_FALSE(r.failed);
  const double e = r.report["exact"]["heff_low_spectrum"][0].get<double>();
  CHECK(std::abs(e - oracle::two_level_ground(2.0, 0.2)) < 1e-12);
  CHECK(r.report["timestamp"] == "t");
  CHECK(r.report["tensor_ordering"].is_string());
}

TEST_CASE("task errors are captured") {
  const std::string text = R"({"model": {"type": "raw", "H0": [[0, 0], [0, 2]], "V": [[0, 1], [1, 0]],
    "window": [-0.5, 0.5]}, "epsilon": 1.5})";
  const RunResult r = run(parse_config_text(text), {1.0, "t"});
  CHECK(r.failed);
  CHECK(r.report["exact"]["error_code"] == "EpsilonTooLarge");
  CHECK(r.report["exact"]["passed"] == false);
}

TEST_CASE("lattice tasks and determinism") {
  const RunConfig c = parse_config_text(
      chain_config(R"(["series", "diagrams", "local", "linked_cluster", "equivalence", "stability"])", "0.05"));
  const RunResult a = run(c, {1.0, "t"});
  const RunResult b = run(c, {1.0, "t"});
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.report["diagrams"]["counts"] == nlohmann::json::array());
  CHECK(a.report["local"]["passed"] == true);
  CHECK(a.report["linked_cluster"]["passed"] == true);
  CHECK(a.report["equivalence"]["passed"] == true);
  CHECK(a.report["series"]["passed"] == true);
  // The coupling on the first edge is block-diagonal, the second is not.
  CHECK(a.report["stability"]["passed"] == false);
}
