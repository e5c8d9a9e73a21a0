#include "swolff/cluster_equivalence.hpp"

#include <algorithm>

namespace swolff {

std::string_view to_string(SeriesMethod m) {
  return m == SeriesMethod::global_recursion ? "global_recursion" : "local_sw";
}

namespace {

void check_size(const SpinLattice& lattice, int n) {
  const int nvars = static_cast<int>(lattice.edges().size());
  monomials_up_to(nvars, n, max_edge_monomials);
}

std::vector<Matrix> edge_operators(const SpinLattice& lattice) {
  std::vector<Matrix> out;
  for (int e = 0; e < static_cast<int>(lattice.edges().size()); ++e) out.push_back(lattice.edge_operator(e));
  return out;
}

std::vector<LocalOperator> edge_locals(const SpinLattice& lattice) {
  std::vector<LocalOperator> out;
  for (int e = 0; e < static_cast<int>(lattice.edges().size()); ++e) out.push_back(lattice.edge_local(e));
  return out;
}

}  // namespace

EdgeMonomialSeries multivariate_heff(const SpinLattice& lattice, int n, SeriesMethod method) {
  check_size(lattice, n);
  const SpectralSplit split = lattice.split();
  EdgeMonomialSeries out;
  out.method = method;
  if (method == SeriesMethod::global_recursion) {
    out.terms = global_sw_series(split, edge_operators(lattice), n).heff;
    return out;
  }
  const int nvars = static_cast<int>(lattice.edges().size());
  const LocalSeries series = local_sw_series(lattice, edge_locals(lattice), n);
  const Matrix& p0 = split.p0;
  out.terms = OperatorSeries(nvars, n, lattice.dim());
  out.terms.set(Monomial(static_cast<std::size_t>(nvars), 0), p0 * split.h0 * p0);
  for (const auto& [m, w] : series.w) out.terms.set(m, p0 * w.to_full() * p0);
  return out;
}

OperatorSeries multivariate_k(const SpinLattice& lattice, int n) {
  check_size(lattice, n);
  const int nvars = static_cast<int>(lattice.edges().size());
  const SpectralSplit split = lattice.split();
  const OperatorSeries s = global_sw_series(split, edge_operators(lattice), n).s;
  const LocalSeries local = local_sw_series(lattice, edge_locals(lattice), n);
  OperatorSeries t(nvars, n, lattice.dim());
  for (const auto& [m, tm] : local.t) t.set(m, tm.to_full());
  return (s.exp() * t.scaled(-1.0).exp()).log();
}

LinkedClusterReport linked_cluster_report(const SpinLattice& lattice, const OperatorSeries& series,
                                          double threshold) {
  LinkedClusterReport r;
  const Matrix b = lattice.low_basis();
  const auto& low = lattice.low_layout_ptr();
  double reference = 1.0;
  for (const auto& [m, x] : series.terms()) reference = std::max(reference, scale(x));
  r.threshold = threshold * reference;
  for (const auto& [m, x] : series.terms()) {
    const int q = total_degree(m);
    if (q == 0) continue;
    MonomialCheck c;
    c.degrees = m;
    c.q = q;
    std::uint64_t mask = 0;
    for (std::size_t e = 0; e < m.size(); ++e) {
      if (m[e] > 0) {
        c.edges.push_back(static_cast<int>(e));
        mask |= std::uint64_t{1} << e;
      }
    }
    c.sites = edge_sites(lattice, mask);
    c.connected = edges_connected(lattice, mask);
    c.norm = operator_norm(x);
    c.nonzero = c.norm > r.threshold;
    const Matrix compressed = b.adjoint() * x * b;
    const Eigen::Index d = compressed.rows();
    Matrix outside = Matrix::Zero(d, d);
    for (const auto& [a, xa] : support_decompose(low, compressed).terms()) {
      if (!is_subset(a, c.sites)) outside += low->embed(a, xa);
    }
    c.outside_residual = operator_norm(outside);
    c.violation = (c.nonzero && (!c.connected || static_cast<int>(c.edges.size()) > q)) ||
                  c.outside_residual > r.threshold;
    r.max_outside_residual = std::max(r.max_outside_residual, c.outside_residual);
    if (!c.connected) r.max_disconnected_norm = std::max(r.max_disconnected_norm, c.norm);
    if (c.violation) ++r.violations;
    r.monomials.push_back(std::move(c));
  }
  return r;
}

double specialization_residual(const SpinLattice& lattice, const EdgeMonomialSeries& series) {
  const int n = series.terms.order();
  std::vector<Matrix> uni;
  if (series.method == SeriesMethod::global_recursion) {
    uni = global_sw_series(lattice.split(), {lattice.v()}, n).heff.specialize();
  } else {
    const LocalSWState st = build_local_sw(lattice, 0.0, n);
    uni = st.heff_coefficients.coeffs;
  }
  const std::vector<Matrix> multi = series.terms.specialize();
  double r = 0.0;
  for (std::size_t q = 0; q < multi.size() && q < uni.size(); ++q) r = std::max(r, operator_norm(multi[q] - uni[q]));
  return r;
}

SeriesCoefficients equivalence_generator(const std::vector<Matrix>& s, const std::vector<Matrix>& t, int n) {
  if (s.empty() || t.empty()) throw Error(ErrorCode::ValidationError, "empty generator series");
  const Eigen::Index dim = s[0].rows();
  OperatorSeries ss(1, n, dim);
  OperatorSeries ts(1, n, dim);
  for (int j = 1; j <= n; ++j) {
    if (j < static_cast<int>(s.size())) ss.set({j}, s[static_cast<std::size_t>(j)]);
    if (j < static_cast<int>(t.size())) ts.set({j}, t[static_cast<std::size_t>(j)]);
  }
  const OperatorSeries k = (ss.exp() * ts.scaled(-1.0).exp()).log();
  SeriesCoefficients out;
  out.coeffs = k.specialize();
  return out;
}

EquivalenceResult equivalence_residual(const SpinLattice& lattice, double epsilon, int n) {
  const SpectralSplit split = lattice.split();
  const GlobalSeries global = global_sw_series(split, {lattice.v()}, n);
  const LocalSWState local = build_local_sw(lattice, epsilon, n);

  const std::vector<Matrix> s = global.s.specialize();
  std::vector<Matrix> t{Matrix::Zero(lattice.dim(), lattice.dim())};
  for (const LocalOperator& tj : local.t) t.push_back(tj.to_full());

  EquivalenceResult r;
  r.k = equivalence_generator(s, t, n);
  const Matrix& p0 = split.p0;
  for (int j = 1; j <= n; ++j) {
    r.k_offdiag.push_back(operator_norm(block_off_diagonal_part(r.k.coeffs[static_cast<std::size_t>(j)], p0)));
  }

  const std::vector<Matrix> heff = global.heff.specialize();
  Matrix m = Matrix::Zero(lattice.dim(), lattice.dim());
  double w = 1.0;
  for (const Matrix& c : heff) {
    m += w * c;
    w *= epsilon;
  }
  const Matrix b = lattice.low_basis();
  Matrix k = b.adjoint() * r.k.evaluate(epsilon) * b;
  k = 0.5 * (k - k.adjoint()).eval();
  const Matrix u = exp_anti_hermitian(k);
  const Matrix mc = b.adjoint() * m * b;
  const Matrix lc = b.adjoint() * local.heff_loc * b;
  r.residual = operator_norm(mc - u * lc * u.adjoint());
  r.untransformed = operator_norm(mc - lc);
  return r;
}

}  // namespace swolff
