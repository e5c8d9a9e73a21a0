#include "swolff/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "swolff/cluster_equivalence.hpp"
#include "swolff/diagrams.hpp"
#include "swolff/direct_rotation.hpp"
#include "swolff/exact_sw.hpp"
#include "swolff/fit.hpp"
#include "swolff/local_sw.hpp"
#include "swolff/perturbative_sw.hpp"
#include "swolff/random_models.hpp"

namespace swolff {

using nlohmann::json;

namespace {

struct Params {
  std::uint64_t seed;
  int order;
  double ts;
};

double finite_or(double x, double fallback) { return std::isfinite(x) ? x : fallback; }

SuiteResult suite_rotation(const Params& p) {
  Rng rng(p.seed);
  std::uniform_int_distribution<int> dims(2, 12);
  double unitarity = 0.0, mapping = 0.0, blocks = 0.0, norm = 0.0;
  const int trials = 50;
  for (int i = 0; i < trials; ++i) {
    const int d = dims(rng);
    const int r = std::uniform_int_distribution<int>(1, d - 1)(rng);
    const Matrix p0 = random_projector(rng, d, r);
    const Matrix q = nearby_projector(rng, p0, 0.95);
    const RotationPair pair(q, p0);
    const Matrix u = direct_rotation(pair);
    const Matrix s = rotation_generator(pair);
    unitarity = std::max(unitarity, unitarity_residual(u));
    mapping = std::max(mapping, operator_norm(u * q * u.adjoint() - p0));
    blocks = std::max(blocks, generator_block_residual(pair, s));
    norm = std::max(norm, operator_norm(s));
  }
  const bool ok = unitarity <= 1e-10 * p.ts && mapping <= 1e-9 * p.ts && blocks <= 1e-9 * p.ts &&
                  norm < std::numbers::pi / 2.0;
  return {"rotation", ok,
          {{"trials", trials},
           {"max_unitarity_residual", unitarity},
           {"max_mapping_residual", mapping},
           {"max_generator_block_residual", blocks},
           {"max_generator_norm", norm}}};
}

SuiteResult suite_exact(const Params& p) {
  Rng rng(p.seed);
  const int trials = 20;
  double block = 0.0, spectrum = 0.0, bound_excess = -1.0;
  for (int i = 0; i < trials; ++i) {
    const RandomModel m = random_gapped_model(rng, {});
    const SpectralSplit split = make_split(m.h0, m.window);
    const double eps = 0.9 * split.gap / (2.0 * operator_norm(m.v));
    const PerturbedProblem prob = make_problem(split, m.v, eps);
    const ExactSW x = exact_sw_transform(prob);
    block = std::max(block, x.block_residual);
    const RealVector low = spectral_decompose(x.heff_low).values;
    spectrum = std::max(spectrum, (low - x.low_spectrum).cwiseAbs().maxCoeff());
    const double bound = 2.0 * eps * operator_norm(m.v) / split.gap;
    bound_excess = std::max(bound_excess, x.projector_distance - bound);
  }
  ModelShape small{4, 1, 1.0, 0.0, 1.0};
  const RandomModel ma = random_gapped_model(rng, small);
  const RandomModel mb = random_gapped_model(rng, small);
  const PerturbedProblem a = make_problem(make_split(ma.h0, ma.window), ma.v, 0.2);
  const PerturbedProblem b = make_problem(make_split(mb.h0, mb.window), mb.v, 0.3);
  const double additivity = additivity_residual(a, b);
  const bool ok = block <= 1e-9 * p.ts && spectrum <= 1e-9 * p.ts && bound_excess <= 1e-9 * p.ts &&
                  additivity <= 1e-9 * p.ts;
  return {"exact", ok,
          {{"trials", trials},
           {"max_block_residual", block},
           {"max_spectrum_mismatch", spectrum},
           {"max_distance_bound_excess", bound_excess},
           {"additivity_residual", additivity}}};
}

SuiteResult suite_series(const Params& p) {
  Rng rng(p.seed);
  const int n = std::clamp(p.order, 2, 4);
  double closed = 0.0;
  json slopes = json::array();
  bool ok = true;
  for (int i = 0; i < 5; ++i) {
    const RandomModel m = random_gapped_model(rng, {6, 2, 1.0, 0.0, 1.0});
    const SpectralSplit split = make_split(m.h0, m.window);
    const PerturbedProblem base = make_problem(split, m.v, 0.0);
    const SeriesCoefficients h = heff_series(base, 4);
    closed = std::max({closed, operator_norm(heff_order3(base) - h.coeffs[3]),
                       operator_norm(heff_order4(base) - h.coeffs[4])});
    const double rho = convergence_radius(split, m.v);
    std::vector<double> xs, ys;
    for (double eps : halving_sweep(rho / 4.0, rho / 32.0)) {
      const ExactSW x = exact_sw_transform(make_problem(split, m.v, eps));
      xs.push_back(eps);
      ys.push_back(operator_norm(x.heff_full - h.evaluate(eps, n)));
    }
    const double slope = loglog_slope(xs, ys);
    slopes.push_back(finite_or(slope, 0.0));
    ok = ok && slope >= n + 0.5;
  }
  ok = ok && closed <= 1e-10 * p.ts;
  return {"series", ok, {{"order", n}, {"max_closed_form_residual", closed}, {"fitted_exponents", slopes}}};
}

SuiteResult suite_diagrams(const Params& p) {
  Rng rng(p.seed);
  const int n = std::clamp(p.order, 2, 6);
  json counts = json::array();
  for (int q = 3; q <= 6; ++q) counts.push_back(enumerate_admissible(q).size());
  double dh = 0.0, ds = 0.0;
  const int trials = 10;
  for (int i = 0; i < trials; ++i) {
    const RandomModel m = random_gapped_model(rng, {6, 2, 1.0, 0.3, 1.0});
    const SpectralSplit split = make_split(m.h0, m.window);
    const GlobalSeries g = global_sw_series(split, {m.v}, n);
    const std::vector<Matrix> s = g.s.specialize();
    const std::vector<Matrix> h = g.heff.specialize();
    const SeriesCoefficients hd = heff_via_diagrams(split, m.v, n);
    const SeriesCoefficients sd = s_via_diagrams(split, m.v, n);
    for (int q = 1; q <= n; ++q) {
      const auto k = static_cast<std::size_t>(q);
      dh = std::max(dh, operator_norm(hd.coeffs[k] - h[k]) / scale(h[k]));
      ds = std::max(ds, operator_norm(sd.coeffs[k] - s[k]) / scale(s[k]));
    }
  }
  const bool ok = counts == json{1, 3, 7, 20} && dh <= 1e-10 * p.ts && ds <= 1e-10 * p.ts;
  return {"diagrams", ok,
          {{"counts", counts}, {"trials", trials}, {"order", n}, {"max_heff_difference", dh},
           {"max_generator_difference", ds}}};
}

SpinLattice qutrit_chain(Rng& rng, int sites) { return random_chain(rng, sites, 3, 2, 1.0, 1.0); }

SuiteResult suite_linked_cluster(const Params& p) {
  Rng rng(p.seed);
  const int n = std::clamp(p.order, 1, 3);
  const SpinLattice lattice = qutrit_chain(rng, 3);
  json out{{"order", n}};
  bool ok = true;
  for (SeriesMethod method : {SeriesMethod::global_recursion, SeriesMethod::local_sw}) {
    const EdgeMonomialSeries series = multivariate_heff(lattice, n, method);
    const LinkedClusterReport r = linked_cluster_report(lattice, series.terms, 1e-9 * p.ts);
    const double spec = specialization_residual(lattice, series);
    out[std::string(to_string(method))] = {{"violations", r.violations},
                                          {"max_outside_residual", r.max_outside_residual},
                                          {"max_disconnected_norm", r.max_disconnected_norm},
                                          {"specialization_residual", spec}};
    ok = ok && r.violations == 0 && spec <= 1e-10 * p.ts;
  }
  const LinkedClusterReport rk = linked_cluster_report(lattice, multivariate_k(lattice, n), 1e-9 * p.ts);
  out["generator_k"] = {{"violations", rk.violations}, {"max_outside_residual", rk.max_outside_residual}};
  ok = ok && rk.violations == 0;
  return {"linked_cluster", ok, out};
}

SuiteResult suite_local(const Params& p) {
  Rng rng(p.seed);
  const int n = std::clamp(p.order, 1, 3);
  const SpinLattice lattice = random_chain(rng, 3, 2, 1, 1.0, 1.0);
  const LocalSWState st = build_local_sw(lattice, 0.05, 3);
  json loc = json::array();
  bool ok = true;
  for (const LocalityEntry& e : st.locality) {
    loc.push_back({{"j", e.j}, {"generator_locality", e.t_locality}, {"v_locality", e.v_locality},
                   {"identity_residual", e.identity_residual}});
    ok = ok && e.t_locality <= e.j + 1 && e.v_locality <= e.j + 1 && e.identity_residual <= 1e-9 * p.ts;
  }
  std::vector<double> xs, ys;
  for (double eps : halving_sweep(0.04, 0.005)) {
    xs.push_back(eps);
    ys.push_back(garbage_norm(build_local_sw(lattice, eps, n)));
  }
  const double slope = loglog_slope(xs, ys);
  ok = ok && slope >= n + 0.5;
  return {"local", ok, {{"order", n}, {"locality", loc}, {"fitted_exponent", finite_or(slope, 0.0)}}};
}

SuiteResult suite_equivalence(const Params& p) {
  Rng rng(p.seed);
  const int n = std::clamp(p.order, 1, 3);
  const SpinLattice lattice = qutrit_chain(rng, 2);
  std::vector<double> xs, ys;
  double koff = 0.0;
  for (double eps : halving_sweep(0.04, 0.005)) {
    const EquivalenceResult r = equivalence_residual(lattice, eps, n);
    for (double x : r.k_offdiag) koff = std::max(koff, x);
    xs.push_back(eps);
    ys.push_back(r.residual);
  }
  const double slope = loglog_slope(xs, ys);
  const bool ok = slope >= n + 0.5 && koff <= 1e-9 * p.ts;
  return {"equivalence", ok,
          {{"order", n}, {"max_k_block_off_diagonal", koff}, {"fitted_exponent", finite_or(slope, 0.0)}}};
}

SuiteResult suite_stability(const Params& p) {
  Rng rng(p.seed);
  const int trials = 10;
  double worst = 0.0;
  int stable = 0;
  for (int i = 0; i < trials; ++i) {
    const SpinLattice lattice = random_chain(rng, 3, 2, 1, 1.0, 0.0);
    LocalOperator dec(lattice.layout_ptr());
    for (const Edge& e : lattice.edges()) {
      dec.add(site_set({e.u, e.v}), random_block_diagonal_coupling(rng, lattice, e.u, e.v));
    }
    const StabilityResult probe = stability_check(lattice, dec);
    const LocalOperator scaled = dec.scaled(0.9 * probe.gap / probe.lhs);
    const StabilityResult r = stability_check(lattice, scaled);
    if (!r.stable) continue;
    ++stable;
    const Matrix h = lattice.h0() + scaled.to_full();
    const Matrix b = lattice.low_basis();
    const double full = spectral_decompose(h).values(0);
    const double low = spectral_decompose(b.adjoint() * h * b).values(0);
    worst = std::max(worst, std::abs(full - low));
  }
  const bool ok = stable == trials && worst <= 1e-10 * p.ts;
  return {"stability", ok, {{"trials", trials}, {"stable", stable}, {"max_ground_energy_difference", worst}}};
}

const std::map<std::string, std::function<SuiteResult(const Params&)>>& suite_table() {
  static const std::map<std::string, std::function<SuiteResult(const Params&)>> table{
      {"rotation", suite_rotation},       {"exact", suite_exact},
      {"series", suite_series},           {"diagrams", suite_diagrams},
      {"linked_cluster", suite_linked_cluster}, {"local", suite_local},
      {"equivalence", suite_equivalence}, {"stability", suite_stability}};
  return table;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"rotation", "exact",       "series",      "diagrams",
                                              "linked_cluster", "local", "equivalence", "stability"};
  return names;
}

std::vector<SuiteResult> run_verify(const std::string& suite, std::uint64_t seed, int order,
                                    double tolerance_scale) {
  const Params params{seed, order, tolerance_scale};
  std::vector<std::string> names;
  if (suite == "all") {
    names = verify_suites();
  } else if (suite_table().count(suite)) {
    names = {suite};
  } else {
    throw Error(ErrorCode::ValidationError, "unknown suite '" + suite + "'");
  }
  std::vector<SuiteResult> out;
  for (const std::string& name : names) {
    try {
      out.push_back(suite_table().at(name)(params));
    } catch (const Error& e) {
      out.push_back({name, false, {{"error", e.what()}, {"error_code", std::string(to_string(e.code()))}}});
    }
  }
  return out;
}

}  // namespace swolff
