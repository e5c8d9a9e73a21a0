#include "swolff/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>

#include "swolff/cluster_equivalence.hpp"
#include "swolff/diagrams.hpp"
#include "swolff/fit.hpp"
#include "swolff/local_sw.hpp"
#include "swolff/perturbative_sw.hpp"

namespace swolff {

using nlohmann::json;

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json report_header(const std::string& canonical, std::uint64_t seed, double tolerance_scale,
                   const std::string& timestamp) {
  return {
      {"config_hash", fnv1a_hex(canonical)},
      {"seed", seed},
      {"tolerance_scale", tolerance_scale},
      {"tolerances",
       {{"structural", tol::structural},
        {"eigen", tol::eigen},
        {"branch", tol::branch},
        {"rotation", tol::rotation},
        {"window", tol::window},
        {"gap_floor", tol::gap_floor},
        {"support", tol::support}}},
      {"tensor_ordering", "site-major, site 0 slowest"},
      {"timestamp", timestamp.empty() ? utc_timestamp() : timestamp},
  };
}

namespace {

json real_list(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(std::isfinite(x) ? json(x) : json(nullptr));
  return out;
}

json real_list(const RealVector& v) { return real_list(std::vector<double>(v.data(), v.data() + v.size())); }

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct Context {
  const RunConfig& config;
  double ts;
};

RealVector sorted_eigenvalues(const Matrix& x) { return spectral_decompose(x).values; }

// Attaches per-epsilon entries either flat (single epsilon) or as points.
void attach_points(json& out, const RunConfig& c, const std::vector<json>& points) {
  if (!c.sweep && points.size() == 1) {
    for (auto& [k, v] : points[0].items()) out[k] = v;
  } else {
    out["points"] = points;
  }
}

json task_exact(const Context& ctx, bool& passed) {
  const RawModel m = ctx.config.problem();
  const SpectralSplit split = make_split(m.h0, m.window);
  json out{{"gap", split.gap}, {"rank", split.rank()}, {"dim", split.dim()}};
  std::vector<json> points;
  for (double eps : ctx.config.epsilon) {
    const PerturbedProblem prob = make_problem(split, m.v, eps);
    const ExactSW x = exact_sw_transform(prob);
    const double hnorm = std::max(1.0, operator_norm(prob.hamiltonian()));
    const RealVector spectrum = sorted_eigenvalues(x.heff_low);
    const double mismatch = spectrum.size() == x.low_spectrum.size()
                                ? (spectrum - x.low_spectrum).cwiseAbs().maxCoeff()
                                : std::numeric_limits<double>::infinity();
    const double bound = 2.0 * std::abs(eps) * operator_norm(m.v) / split.gap;
    const bool ok = x.block_residual <= tol::rotation * hnorm * ctx.ts &&
                    mismatch <= tol::eigen * hnorm * ctx.ts &&
                    x.projector_distance <= bound + tol::rotation * ctx.ts;
    passed = passed && ok;
    points.push_back({{"epsilon", eps},
                      {"epsilon_c", number_or_null(prob.epsilon_c)},
                      {"heff_low_spectrum", real_list(spectrum)},
                      {"heff_low", matrix_to_json(x.heff_low)},
                      {"perturbed_low_spectrum", real_list(x.low_spectrum)},
                      {"spectrum_mismatch", mismatch},
                      {"projector_distance", x.projector_distance},
                      {"distance_bound", bound},
                      {"block_residual", x.block_residual},
                      {"generator_norm", operator_norm(x.s)}});
  }
  attach_points(out, ctx.config, points);
  return out;
}

json task_series(const Context& ctx, bool& passed) {
  const RawModel m = ctx.config.problem();
  const SpectralSplit split = make_split(m.h0, m.window);
  const int n = ctx.config.order;
  const GlobalSeries g = global_sw_series(split, {m.v}, n);
  const std::vector<Matrix> s = g.s.specialize();
  const std::vector<Matrix> h = g.heff.specialize();
  const Matrix& p0 = split.p0;

  std::vector<double> s_norms, h_norms;
  double s_diag = 0.0, s_anti = 0.0, h_herm = 0.0, h_outside = 0.0;
  double reference = 1.0;
  for (int q = 0; q <= n; ++q) {
    const Matrix& sq = s[static_cast<std::size_t>(q)];
    const Matrix& hq = h[static_cast<std::size_t>(q)];
    s_norms.push_back(operator_norm(sq));
    h_norms.push_back(operator_norm(hq));
    reference = std::max({reference, scale(sq), scale(hq)});
    s_diag = std::max(s_diag, block_diagonal_norm(sq, p0));
    s_anti = std::max(s_anti, anti_hermiticity_residual(sq));
    h_herm = std::max(h_herm, hermiticity_residual(hq));
    h_outside = std::max(h_outside, operator_norm(hq - p0 * hq * p0));
  }
  const double rho = convergence_radius(split, m.v);
  json out{{"order", n},
           {"generator_norms", real_list(s_norms)},
           {"heff_norms", real_list(h_norms)},
           {"max_generator_block_diagonal", s_diag},
           {"max_generator_anti_hermiticity", s_anti},
           {"max_heff_hermiticity", h_herm},
           {"max_heff_outside_low_block", h_outside},
           {"convergence_radius", number_or_null(rho)}};
  bool ok = s_diag <= tol::rotation * reference * ctx.ts && s_anti <= tol::structural * reference * ctx.ts &&
            h_herm <= tol::structural * reference * ctx.ts && h_outside <= tol::rotation * reference * ctx.ts;

  const PerturbedProblem base = make_problem(split, m.v, 0.0);
  if (n >= 3) {
    const double r3 = operator_norm(heff_order3(base) - h[3]);
    out["order3_closed_form_residual"] = r3;
    ok = ok && r3 <= tol::rotation * reference * ctx.ts;
  }
  if (n >= 4) {
    const double r4 = operator_norm(heff_order4(base) - h[4]);
    out["order4_closed_form_residual"] = r4;
    ok = ok && r4 <= tol::rotation * reference * ctx.ts;
    if (const auto simple = heff_order4_simplified(base)) {
      const double rs = operator_norm(*simple - h[4]);
      out["order4_simplified_residual"] = rs;
      ok = ok && rs <= tol::rotation * reference * ctx.ts;
    } else {
      out["order4_simplified_residual"] = nullptr;
    }
  }

  std::vector<json> points;
  std::vector<double> xs, ys;
  bool all_small = true;
  for (double eps : ctx.config.epsilon) {
    const PerturbedProblem prob = make_problem(split, m.v, eps);
    json p{{"epsilon", eps}};
    if (std::abs(eps) < prob.epsilon_c) {
      const ExactSW x = exact_sw_transform(prob);
      Matrix approx = Matrix::Zero(split.dim(), split.dim());
      double w = 1.0;
      for (int q = 0; q <= n; ++q, w *= eps) approx += w * h[static_cast<std::size_t>(q)];
      const double r = operator_norm(x.heff_full - approx);
      p["residual_vs_exact"] = r;
      xs.push_back(std::abs(eps));
      ys.push_back(r);
    } else {
      p["residual_vs_exact"] = nullptr;
    }
    all_small = all_small && std::abs(eps) <= rho / 4.0;
    points.push_back(std::move(p));
  }
  attach_points(out, ctx.config, points);
  if (ctx.config.sweep) {
    const double slope = loglog_slope(xs, ys);
    out["fitted_exponent"] = number_or_null(slope);
    out["exponent_checked"] = all_small;
    if (all_small) ok = ok && slope >= n + 0.5;
  }
  passed = passed && ok;
  return out;
}

json task_diagrams(const Context& ctx, bool& passed) {
  const int n = ctx.config.order;
  json counts = json::array();
  json by_order = json::object();
  for (int q = 2; q <= n; ++q) {
    const auto trees = enumerate_admissible(q);
    by_order[std::to_string(q)] = trees.size();
    if (q >= 3) counts.push_back(trees.size());
  }
  json out{{"counts", counts}, {"counts_by_order", by_order}, {"counts_from", 3}};

  const RawModel m = ctx.config.problem();
  const SpectralSplit split = make_split(m.h0, m.window);
  const GlobalSeries g = global_sw_series(split, {m.v}, n);
  const std::vector<Matrix> s = g.s.specialize();
  const std::vector<Matrix> h = g.heff.specialize();
  const SeriesCoefficients hd = heff_via_diagrams(split, m.v, n);
  const SeriesCoefficients sd = s_via_diagrams(split, m.v, n);
  std::vector<double> dh, ds;
  bool ok = true;
  for (int q = 1; q <= n; ++q) {
    const auto i = static_cast<std::size_t>(q);
    const double a = operator_norm(hd.coeffs[i] - h[i]);
    const double b = operator_norm(sd.coeffs[i] - s[i]);
    dh.push_back(a);
    ds.push_back(b);
    ok = ok && a <= 1e-10 * scale(h[i]) * ctx.ts && b <= 1e-10 * scale(s[i]) * ctx.ts;
  }
  out["heff_difference_by_order"] = real_list(dh);
  out["generator_difference_by_order"] = real_list(ds);
  passed = passed && ok;
  return out;
}

const SpinLattice& need_lattice(const RunConfig& c, const char* task) {
  if (!c.lattice) throw Error(ErrorCode::ValidationError, std::string(task) + " task needs a lattice model");
  return *c.lattice;
}

json task_local(const Context& ctx, bool& passed) {
  const SpinLattice& lattice = need_lattice(ctx.config, "local");
  const int n = ctx.config.order;
  const SpectralSplit split = lattice.split();
  json out{{"order", n}};
  bool ok = true;
  std::vector<json> points;
  std::vector<double> xs, ys;
  bool first = true;
  for (double eps : ctx.config.epsilon) {
    const LocalSWState st = build_local_sw(lattice, eps, n);
    if (first) {
      json loc = json::array();
      for (const LocalityEntry& e : st.locality) {
        loc.push_back({{"j", e.j},
                       {"generator_locality", e.t_locality},
                       {"v_locality", e.v_locality},
                       {"v_strength", e.v_strength},
                       {"identity_residual", e.identity_residual}});
        ok = ok && e.t_locality <= e.j + 1 && e.v_locality <= e.j + 1 &&
             e.identity_residual <= tol::rotation * std::max(1.0, e.v_strength) * ctx.ts;
      }
      out["locality"] = loc;
      json strengths = json::array();
      for (const LocalOperator& v : st.vseq) strengths.push_back(v.strength());
      out["v_strengths"] = strengths;
      first = false;
    }
    const double offdiag = operator_norm(block_off_diagonal_part(st.hn, split.p0));
    const double garbage = garbage_norm(st);
    ok = ok && offdiag <= 1e-9 * scale(st.hn) * ctx.ts;
    points.push_back({{"epsilon", eps},
                      {"garbage_norm", garbage},
                      {"hn_block_off_diagonal", offdiag},
                      {"heff_loc_spectrum", real_list(sorted_eigenvalues(lattice.low_basis().adjoint() *
                                                                         st.heff_loc * lattice.low_basis()))}});
    xs.push_back(std::abs(eps));
    ys.push_back(garbage);
  }
  attach_points(out, ctx.config, points);
  if (ctx.config.sweep) out["fitted_exponent"] = number_or_null(loglog_slope(xs, ys));
  passed = passed && ok;
  return out;
}

json cluster_report_json(const LinkedClusterReport& r) {
  json mono = json::array();
  for (const MonomialCheck& c : r.monomials) {
    mono.push_back({{"degrees", c.degrees},
                    {"edges", c.edges},
                    {"sites", sites_of(c.sites)},
                    {"connected", c.connected},
                    {"norm", c.norm},
                    {"outside_residual", c.outside_residual},
                    {"violation", c.violation}});
  }
  return {{"violations", r.violations},
          {"max_outside_residual", r.max_outside_residual},
          {"max_disconnected_norm", r.max_disconnected_norm},
          {"threshold", r.threshold},
          {"monomials", mono}};
}

json task_linked_cluster(const Context& ctx, bool& passed) {
  const SpinLattice& lattice = need_lattice(ctx.config, "linked_cluster");
  const int n = std::min(ctx.config.order, 4);
  json clusters = json::array();
  for (const Cluster& c : connected_clusters(lattice, n)) {
    clusters.push_back({{"edges", c.edges}, {"sites", sites_of(c.sites)}});
  }
  json out{{"order", n}, {"clusters", clusters}};
  bool ok = true;
  for (SeriesMethod method : {SeriesMethod::global_recursion, SeriesMethod::local_sw}) {
    const EdgeMonomialSeries series = multivariate_heff(lattice, n, method);
    const LinkedClusterReport r = linked_cluster_report(lattice, series.terms, 1e-9 * ctx.ts);
    json j = cluster_report_json(r);
    const double spec = specialization_residual(lattice, series);
    j["specialization_residual"] = spec;
    double reference = 1.0;
    for (const auto& [mono, x] : series.terms.terms()) reference = std::max(reference, scale(x));
    ok = ok && r.violations == 0 && spec <= 1e-10 * reference * ctx.ts;
    out[std::string(to_string(method))] = j;
  }
  const OperatorSeries k = multivariate_k(lattice, n);
  const LinkedClusterReport rk = linked_cluster_report(lattice, k, 1e-9 * ctx.ts);
  out["generator_k"] = cluster_report_json(rk);
  ok = ok && rk.violations == 0;
  passed = passed && ok;
  return out;
}

json task_equivalence(const Context& ctx, bool& passed) {
  const SpinLattice& lattice = need_lattice(ctx.config, "equivalence");
  const int n = ctx.config.order;
  json out{{"order", n}};
  bool ok = true;
  std::vector<json> points;
  std::vector<double> xs, ys;
  for (double eps : ctx.config.epsilon) {
    const EquivalenceResult r = equivalence_residual(lattice, eps, n);
    double kmax = 0.0;
    double reference = 1.0;
    for (std::size_t j = 1; j < r.k.coeffs.size(); ++j) reference = std::max(reference, scale(r.k.coeffs[j]));
    for (double x : r.k_offdiag) kmax = std::max(kmax, x);
    ok = ok && kmax <= 1e-9 * reference * ctx.ts;
    points.push_back({{"epsilon", eps},
                      {"residual", r.residual},
                      {"untransformed_residual", r.untransformed},
                      {"k_block_off_diagonal", real_list(r.k_offdiag)}});
    xs.push_back(std::abs(eps));
    ys.push_back(r.residual);
  }
  attach_points(out, ctx.config, points);
  if (ctx.config.sweep) out["fitted_exponent"] = number_or_null(loglog_slope(xs, ys));
  passed = passed && ok;
  return out;
}

json task_stability(const Context& ctx, bool& passed) {
  const SpinLattice& lattice = need_lattice(ctx.config, "stability");
  std::vector<json> points;
  bool ok = true;
  const Matrix b = lattice.low_basis();
  for (double eps : ctx.config.epsilon) {
    const StabilityResult r = stability_check(lattice, lattice.v_by_edge().scaled(eps));
    json by_k = json::object();
    for (const auto& [k, j] : r.strength_by_locality) by_k[std::to_string(k)] = j;
    json p{{"epsilon", eps}, {"stable", r.stable}, {"lhs", r.lhs}, {"gap", number_or_null(r.gap)},
           {"strength_by_locality", by_k}};
    const Matrix h = lattice.h0() + eps * lattice.v();
    const double ground = sorted_eigenvalues(h)(0);
    const double low_ground = sorted_eigenvalues(b.adjoint() * h * b)(0);
    p["ground_energy"] = ground;
    p["low_block_ground_energy"] = low_ground;
    if (r.stable) ok = ok && std::abs(ground - low_ground) <= 1e-10 * scale(h) * ctx.ts;
    points.push_back(std::move(p));
  }
  json out = json::object();
  attach_points(out, ctx.config, points);
  passed = passed && ok;
  return out;
}

}  // namespace

RunResult run(const RunConfig& config, const RunOptions& options) {
  RunResult result;
  json& report = result.report;
  report = report_header(config.canonical, config.seed, options.tolerance_scale, options.timestamp);
  report["order"] = config.order;
  report["epsilon"] = config.sweep ? json(config.epsilon) : json(config.epsilon.front());
  report["model"] = config.lattice ? "lattice" : "raw";
  const Context ctx{config, options.tolerance_scale};
  const std::map<std::string, std::function<json(const Context&, bool&)>> handlers{
      {"exact", task_exact},         {"series", task_series},           {"diagrams", task_diagrams},
      {"local", task_local},         {"linked_cluster", task_linked_cluster},
      {"equivalence", task_equivalence}, {"stability", task_stability}};
  for (const std::string& name : known_tasks()) {
    if (std::find(config.tasks.begin(), config.tasks.end(), name) == config.tasks.end()) continue;
    bool passed = true;
    json entry;
    try {
      entry = handlers.at(name)(ctx, passed);
    } catch (const Error& e) {
      passed = false;
      entry = {{"error", e.what()}, {"error_code", std::string(to_string(e.code()))}};
    } catch (const std::exception& e) {
      passed = false;
      entry = {{"error", e.what()}};
    }
    entry["passed"] = passed;
    result.failed = result.failed || !passed;
    report[name] = std::move(entry);
  }
  report["passed"] = !result.failed;
  return result;
}

}  // namespace swolff
