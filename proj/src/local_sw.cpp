#include "swolff/local_sw.hpp"

#include <cmath>
#include <string>

namespace swolff {

const LocalSuperops::Basis& LocalSuperops::basis(SiteSet a) {
  if (auto it = cache_.find(a); it != cache_.end()) return it->second;
  Basis b;
  b.eig = spectral_decompose(lattice_.h0_on(a));
  b.low.resize(static_cast<std::size_t>(b.eig.values.size()));
  // P_A is the zero-energy eigenspace of H_{0,A}; excited levels sit at
  // or above the gap.
  const double cut = std::isinf(lattice_.gap()) ? 1.0 : lattice_.gap() / 2.0;
  for (Eigen::Index i = 0; i < b.eig.values.size(); ++i) b.low[static_cast<std::size_t>(i)] = b.eig.values(i) < cut;
  b.p = lattice_.projector_on(a);
  return cache_.emplace(a, std::move(b)).first->second;
}

Matrix LocalSuperops::L(SiteSet a, const Matrix& x) {
  const Eigen::Index d = lattice_.layout().dim(a);
  if (x.rows() != d || x.cols() != d) {
    throw Error(ErrorCode::SupportMismatch, "operator does not act on the given sites");
  }
  const Basis& b = basis(a);
  const Matrix& w = b.eig.vectors;
  Matrix y = w.adjoint() * x * w;
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const bool li = b.low[static_cast<std::size_t>(i)];
      const bool lj = b.low[static_cast<std::size_t>(j)];
      y(i, j) = li == lj ? Complex(0.0) : y(i, j) / (b.eig.values(i) - b.eig.values(j));
    }
  }
  return w * y * w.adjoint();
}

Matrix LocalSuperops::D(SiteSet a, const Matrix& x) {
  const Eigen::Index d = lattice_.layout().dim(a);
  if (x.rows() != d || x.cols() != d) {
    throw Error(ErrorCode::SupportMismatch, "operator does not act on the given sites");
  }
  return block_diagonal_part(x, basis(a).p);
}

Matrix superop_L_A(const SpinLattice& lattice, SiteSet a, const Matrix& x) {
  LocalSuperops ops(lattice);
  return ops.L(a, x);
}

namespace {

Monomial minus(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] - b[i];
  return m;
}

double factorial(int q) {
  double f = 1.0;
  for (int i = 2; i <= q; ++i) f *= i;
  return f;
}

// sum over m1 of [T_{m1}, prev[m - m1]].
LocalOperator nested_step(const LocalSeries::Map& t, const LocalSeries::Map& prev, const Monomial& m,
                          const std::shared_ptr<const TensorLayout>& layout) {
  LocalOperator acc(layout);
  for (const auto& [m1, t1] : t) {
    if (!divides(m1, m)) continue;
    auto it = prev.find(minus(m, m1));
    if (it == prev.end()) continue;
    acc.add(local_commutator(t1, it->second));
  }
  return acc;
}

}  // namespace

LocalSeries local_sw_series(const SpinLattice& lattice, const std::vector<LocalOperator>& vs, int n,
                            bool next_order) {
  if (n < 1) throw Error(ErrorCode::ValidationError, "local SW order must be at least 1");
  if (n > max_local_order) {
    throw Error(ErrorCode::OrderTooLarge, "local SW order " + std::to_string(n) + " above " +
                                              std::to_string(max_local_order));
  }
  const auto& layout = lattice.layout_ptr();
  const int nvars = static_cast<int>(vs.size());
  const int top = next_order ? n + 1 : n;
  LocalSuperops ops(lattice);

  LocalSeries out;
  out.nvars = nvars;
  out.order = n;
  const LocalOperator h0 = lattice.h0_local();
  std::vector<LocalSeries::Map> gh(static_cast<std::size_t>(top) + 1);
  std::vector<LocalSeries::Map> gv(static_cast<std::size_t>(top) + 1);
  gh[0].emplace(Monomial(static_cast<std::size_t>(nvars), 0), h0);
  for (int k = 0; k < nvars; ++k) gv[0].emplace(unit_monomial(nvars, k), vs[static_cast<std::size_t>(k)].canonical());

  for (const Monomial& m : monomials_up_to(nvars, top)) {
    const int d = total_degree(m);
    if (d == 0) continue;
    LocalOperator w(layout);
    for (int q = 2; q <= d; ++q) {
      LocalOperator g = nested_step(out.t, gh[static_cast<std::size_t>(q - 1)], m, layout);
      if (g.empty()) continue;
      w.add(g, 1.0 / factorial(q));
      gh[static_cast<std::size_t>(q)].emplace(m, std::move(g));
    }
    if (auto it = gv[0].find(m); it != gv[0].end()) w.add(it->second);
    for (int q = 1; q <= d - 1; ++q) {
      LocalOperator g = nested_step(out.t, gv[static_cast<std::size_t>(q - 1)], m, layout);
      if (g.empty()) continue;
      w.add(g, 1.0 / factorial(q));
      gv[static_cast<std::size_t>(q)].emplace(m, std::move(g));
    }
    w = w.canonical();
    if (d <= n) {
      LocalOperator tm(layout);
      LocalOperator dm(layout);
      for (const auto& [a, x] : w.terms()) {
        if (a == 0) {
          dm.add(a, x);
          continue;
        }
        tm.add(a, ops.L(a, x));
        dm.add(a, ops.D(a, x));
      }
      gh[1].emplace(m, local_commutator(tm, h0));
      out.t.emplace(m, std::move(tm));
      out.d.emplace(m, std::move(dm));
    }
    out.w.emplace(m, std::move(w));
  }
  return out;
}

Matrix LocalSWState::generator() const {
  Matrix out = Matrix::Zero(lattice.dim(), lattice.dim());
  double w = 1.0;
  for (const LocalOperator& tj : t) {
    w *= epsilon;
    out += w * tj.to_full();
  }
  return out;
}

LocalSWState build_local_sw(const SpinLattice& lattice, double epsilon, int n) {
  if (lattice.dim() > max_total_dim) throw Error(ErrorCode::DimensionCap, "lattice dimension above cap");
  const LocalSeries series = local_sw_series(lattice, {lattice.v_by_edge()}, n, true);
  LocalSWState st{lattice, epsilon, n, {}, {}, {}, Matrix(), Matrix(), SeriesCoefficients(), {}};

  const Matrix h0 = lattice.h0();
  const SpectralSplit split = lattice.split();
  const Matrix& p0 = split.p0;
  st.hn = h0;
  st.heff_coefficients.tag = SeriesCoefficients::BlockTag::low_block;
  st.heff_coefficients.coeffs.push_back(p0 * h0 * p0);
  double w = 1.0;
  for (int j = 1; j <= n + 1; ++j) {
    const Monomial m{j};
    st.vseq.push_back(series.w.at(m));
    if (j > n) break;
    w *= epsilon;
    st.t.push_back(series.t.at(m));
    st.dseq.push_back(series.d.at(m));
    const Matrix dfull = st.dseq.back().to_full();
    const Matrix wfull = st.vseq.back().to_full();
    st.hn += w * dfull;
    st.heff_coefficients.coeffs.push_back(p0 * wfull * p0);

    LocalityEntry entry;
    entry.j = j;
    entry.t_locality = st.t.back().locality();
    entry.v_locality = st.vseq.back().locality();
    entry.v_strength = st.vseq.back().strength();
    entry.identity_residual = operator_norm(commutator(st.t.back().to_full(), h0) + wfull - dfull);
    st.locality.push_back(entry);
  }
  st.heff_loc = p0 * st.hn * p0;
  return st;
}

double garbage_norm(const LocalSWState& state) {
  const SpinLattice& lattice = state.lattice;
  if (lattice.dim() > max_total_dim) throw Error(ErrorCode::DimensionCap, "lattice dimension above cap");
  const Matrix h = lattice.h0() + state.epsilon * lattice.v();
  const Matrix u = exp_anti_hermitian(state.generator());
  return operator_norm(u * h * u.adjoint() - state.hn);
}

StabilityResult stability_check(const SpinLattice& lattice, const LocalOperator& dec, double gap) {
  StabilityResult r;
  r.gap = gap;
  std::map<int, LocalOperator> classes;
  for (const auto& [a, x] : dec.terms()) {
    if (a == 0) continue;
    const Matrix p = lattice.projector_on(a);
    if (operator_norm(commutator(x, p)) > tol::rotation * std::max(1.0, operator_norm(x))) {
      throw Error(ErrorCode::NotBlockDiagonal, "term on sites " + std::to_string(a) + " does not preserve P0");
    }
    auto it = classes.find(site_count(a));
    if (it == classes.end()) it = classes.emplace(site_count(a), LocalOperator(dec.layout_ptr())).first;
    it->second.add(a, x);
  }
  for (const auto& [k, part] : classes) {
    const double j = part.strength();
    r.strength_by_locality[k] = j;
    r.lhs += std::ldexp(j, k + 2);
  }
  r.stable = r.lhs < gap;
  return r;
}

StabilityResult stability_check(const SpinLattice& lattice, const LocalOperator& dec) {
  return stability_check(lattice, dec, lattice.gap());
}

}  // namespace swolff
