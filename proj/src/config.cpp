#include "swolff/config.hpp"

#include <algorithm>
#include <fstream>
#include <cmath>
#include <sstream>

namespace swolff {

const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> tasks{"exact", "series", "diagrams", "local",
                                              "linked_cluster", "equivalence", "stability"};
  return tasks;
}

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

Complex complex_from_json(const nlohmann::json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  field_error(field, "expected a number or [re, im]");
}

double number(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  return j.get<double>();
}

const nlohmann::json& member(const nlohmann::json& j, const std::string& key, const std::string& field) {
  if (!j.is_object() || !j.contains(key)) field_error(field, "missing field '" + key + "'");
  return j.at(key);
}

std::string line_context(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void require_hermitian(const Matrix& m, const std::string& name) {
  if (!satisfies(m, Structure::hermitian)) throw Error(ErrorCode::ValidationError, name + " not hermitian");
}

SpinLattice lattice_from_json(const nlohmann::json& j) {
  const auto& sites_j = member(j, "sites", "model");
  if (!sites_j.is_array() || sites_j.empty()) field_error("model.sites", "expected a non-empty array");
  std::vector<Site> sites;
  for (std::size_t u = 0; u < sites_j.size(); ++u) {
    const std::string f = "model.sites[" + std::to_string(u) + "]";
    Site s;
    s.h0 = matrix_from_json(member(sites_j[u], "h0", f), f + ".h0");
    require_hermitian(s.h0, f + ".h0");
    if (sites_j[u].contains("low_dim")) {
      if (!sites_j[u]["low_dim"].is_number_integer()) field_error(f + ".low_dim", "expected an integer");
      s.low_dim = sites_j[u]["low_dim"].get<int>();
    }
    sites.push_back(std::move(s));
  }
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    const auto& edges_j = j.at("edges");
    if (!edges_j.is_array()) field_error("model.edges", "expected an array");
    for (std::size_t e = 0; e < edges_j.size(); ++e) {
      const std::string f = "model.edges[" + std::to_string(e) + "]";
      const auto& ends = member(edges_j[e], "sites", f);
      if (!ends.is_array() || ends.size() != 2 || !ends[0].is_number_integer() || !ends[1].is_number_integer()) {
        field_error(f + ".sites", "expected two site indices");
      }
      Edge edge;
      edge.u = ends[0].get<int>();
      edge.v = ends[1].get<int>();
      edge.coupling = matrix_from_json(member(edges_j[e], "V", f), f + ".V");
      require_hermitian(edge.coupling, "V");
      edges.push_back(std::move(edge));
    }
  }
  try {
    return SpinLattice(std::move(sites), std::move(edges));
  } catch (const Error& err) {
    throw Error(ErrorCode::ValidationError, std::string("model: ") + err.what());
  }
}

}  // namespace

Matrix matrix_from_json(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) field_error(field, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) field_error(field, "expected a square matrix");
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

nlohmann::json complex_to_json(Complex z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RawModel RunConfig::problem() const {
  if (raw) return *raw;
  const SpinLattice& l = *lattice;
  const double half = std::isinf(l.gap()) ? 1.0 : l.gap() / 2.0;
  return {l.h0(), l.v(), {-half, half}};
}

void validate_config(const RunConfig& c) {
  if (c.epsilon.empty()) throw Error(ErrorCode::ValidationError, "epsilon list is empty");
  if (c.sweep) {
    for (std::size_t i = 0; i < c.epsilon.size(); ++i) {
      if (!(c.epsilon[i] > 0.0)) throw Error(ErrorCode::ValidationError, "epsilon sweep must be strictly positive");
      if (i > 0 && !(c.epsilon[i] < c.epsilon[i - 1])) {
        throw Error(ErrorCode::ValidationError, "epsilon sweep must be strictly descending");
      }
    }
  }
  if (c.order < 1) throw Error(ErrorCode::ValidationError, "order must be at least 1");
  for (const std::string& t : c.tasks) {
    if (std::find(known_tasks().begin(), known_tasks().end(), t) == known_tasks().end()) {
      throw Error(ErrorCode::ValidationError, "unknown task '" + t + "'");
    }
  }
  if (c.raw) {
    if (c.raw->h0.rows() != c.raw->v.rows()) throw Error(ErrorCode::ValidationError, "H0 and V dimensions differ");
    if (c.raw->window.hi < c.raw->window.lo) throw Error(ErrorCode::ValidationError, "window has hi < lo");
  }
}

RunConfig parse_config_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, line_context(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  if (!doc.is_object()) field_error("(root)", "expected an object");

  RunConfig c;
  c.canonical = doc.dump();
  const auto& model = member(doc, "model", "(root)");
  const auto& type = member(model, "type", "model");
  if (!type.is_string()) field_error("model.type", "expected a string");
  if (type == "raw") {
    RawModel raw;
    raw.h0 = matrix_from_json(member(model, "H0", "model"), "model.H0");
    raw.v = matrix_from_json(member(model, "V", "model"), "model.V");
    require_hermitian(raw.h0, "H0");
    require_hermitian(raw.v, "V");
    const auto& w = member(model, "window", "model");
    if (!w.is_array() || w.size() != 2) field_error("model.window", "expected [lo, hi]");
    raw.window = {number(w[0], "model.window[0]"), number(w[1], "model.window[1]")};
    c.raw = std::move(raw);
  } else if (type == "lattice") {
    c.lattice = lattice_from_json(model);
  } else {
    field_error("model.type", "expected \"raw\" or \"lattice\"");
  }

  if (doc.contains("epsilon")) {
    const auto& e = doc.at("epsilon");
    if (e.is_number()) {
      c.epsilon = {e.get<double>()};
    } else if (e.is_array()) {
      c.sweep = true;
      for (std::size_t i = 0; i < e.size(); ++i) c.epsilon.push_back(number(e[i], "epsilon[" + std::to_string(i) + "]"));
    } else {
      field_error("epsilon", "expected a number or an array");
    }
  } else {
    c.epsilon = {0.0};
  }
  if (doc.contains("order")) {
    if (!doc.at("order").is_number_integer()) field_error("order", "expected an integer");
    c.order = doc.at("order").get<int>();
  }
  if (doc.contains("tasks")) {
    const auto& t = doc.at("tasks");
    if (!t.is_array()) field_error("tasks", "expected an array of names");
    c.tasks.clear();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!t[i].is_string()) field_error("tasks[" + std::to_string(i) + "]", "expected a string");
      c.tasks.push_back(t[i].get<std::string>());
    }
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_integer()) field_error("seed", "expected an integer");
    c.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) field_error("output", "expected a string");
    c.output = doc.at("output").get<std::string>();
  }
  validate_config(c);
  return c;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace swolff
