#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swolff/config.hpp"
#include "swolff/diagrams.hpp"
#include "swolff/direct_rotation.hpp"
#include "swolff/exact_sw.hpp"
#include "swolff/perturbative_sw.hpp"
#include "swolff/rational.hpp"
#include "swolff/report.hpp"
#include "swolff/verify.hpp"

namespace py = pybind11;
using namespace swolff;

namespace {

PerturbedProblem problem(const Matrix& h0, const Matrix& v, double lo, double hi, double eps) {
  return make_problem(make_split(h0, {lo, hi}), v, eps);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Schrieffer-Wolff effective Hamiltonians";

  py::register_exception<Error>(m, "SwolffError");

  m.def(
      "bernoulli_coefficients",
      [](int order) {
        const CoefficientTable t = bernoulli_coefficients(order);
        py::dict out;
        py::list a, b;
        for (int k = 0; k <= order; ++k) {
          a.append(to_string(t.a(k)));
          b.append(to_string(t.b(k)));
        }
        out["a"] = a;
        out["b"] = b;
        return out;
      },
      py::arg("order"), "Exact a_k and b_k, k = 0..order, as 'p/q' strings.");

  m.def(
      "tree_counts",
      [](int order) {
        std::vector<std::size_t> counts;
        for (int n = 2; n <= order; ++n) counts.push_back(enumerate_admissible(n).size());
        return counts;
      },
      py::arg("order"), "Number of admissible trees for n = 2..order.");

  m.def(
      "direct_rotation",
      [](const Matrix& p, const Matrix& p0) {
        const RotationPair pair(p, p0);
        return py::make_tuple(direct_rotation(pair), rotation_generator(pair));
      },
      py::arg("p"), py::arg("p0"), "Returns (U, S) with U P U^dagger = P0.");

  m.def(
      "exact_sw",
      [](const Matrix& h0, const Matrix& v, std::pair<double, double> window, double eps) {
        const ExactSW x = exact_sw_transform(problem(h0, v, window.first, window.second, eps));
        py::dict out;
        out["u"] = x.u;
        out["s"] = x.s;
        out["heff"] = x.heff_full;
        out["heff_low"] = x.heff_low;
        out["low_spectrum"] = x.low_spectrum;
        out["projector_distance"] = x.projector_distance;
        out["block_residual"] = x.block_residual;
        return out;
      },
      py::arg("h0"), py::arg("v"), py::arg("window"), py::arg("epsilon"));

  m.def(
      "heff_series",
      [](const Matrix& h0, const Matrix& v, std::pair<double, double> window, int n) {
        return heff_series(problem(h0, v, window.first, window.second, 0.0), n).coeffs;
      },
      py::arg("h0"), py::arg("v"), py::arg("window"), py::arg("order"),
      "Coefficients H_eff,0 .. H_eff,n of the perturbative series.");

  m.def(
      "generator_series",
      [](const Matrix& h0, const Matrix& v, std::pair<double, double> window, int n) {
        return generator_series(problem(h0, v, window.first, window.second, 0.0), n).coeffs;
      },
      py::arg("h0"), py::arg("v"), py::arg("window"), py::arg("order"));

  m.def(
      "heff_via_diagrams",
      [](const Matrix& h0, const Matrix& v, std::pair<double, double> window, int n) {
        return heff_via_diagrams(make_split(h0, {window.first, window.second}), v, n).coeffs;
      },
      py::arg("h0"), py::arg("v"), py::arg("window"), py::arg("order"));

  m.def(
      "run_config",
      [](const std::string& text, double tolerance_scale, const std::string& timestamp) {
        const RunResult r = run(parse_config_text(text), {tolerance_scale, timestamp});
        return py::make_tuple(r.report.dump(), !r.failed);
      },
      py::arg("config_json"), py::arg("tolerance_scale") = 1.0, py::arg("timestamp") = "",
      "Runs a JSON config; returns (report_json, passed).");

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, int order) {
        py::dict out;
        for (const SuiteResult& r : run_verify(suite, seed, order)) out[py::str(r.name)] = r.passed;
        return out;
      },
      py::arg("suite") = "all", py::arg("seed") = 0, py::arg("order") = 3);
}
