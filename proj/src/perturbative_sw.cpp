#include "swolff/perturbative_sw.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace swolff {

Matrix SeriesCoefficients::evaluate(double eps) const { return evaluate(eps, order()); }

Matrix SeriesCoefficients::evaluate(double eps, int n) const {
  if (coeffs.empty()) return {};
  Matrix out = Matrix::Zero(coeffs[0].rows(), coeffs[0].cols());
  double w = 1.0;
  for (int q = 0; q <= std::min(n, order()); ++q) {
    out += w * coeffs[static_cast<std::size_t>(q)];
    w *= eps;
  }
  return out;
}

Matrix superop_L(const SpectralSplit& split, const Matrix& x) {
  if (x.rows() != split.dim() || x.cols() != split.dim()) {
    throw Error(ErrorCode::DimMismatch, "L applied to an operator of the wrong dimension");
  }
  const Matrix& w = split.eig.vectors;
  Matrix y = w.adjoint() * x * w;
  const RealVector& e = split.eig.values;
  const double floor = split.gap / 2.0;
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
      if (split.is_low(i) == split.is_low(j)) {
        y(i, j) = 0.0;
        continue;
      }
      const double d = e(i) - e(j);
      if (std::abs(d) < floor) {
        throw Error(ErrorCode::InternalGapError, "energy denominator " + std::to_string(d) + " below gap/2");
      }
      y(i, j) /= d;
    }
  }
  return w * y * w.adjoint();
}

namespace {

Monomial minus(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] - b[i];
  return m;
}

}  // namespace

GlobalSeries global_sw_series(const SpectralSplit& split, const std::vector<Matrix>& vs, int n, int max_order) {
  if (n < 1) throw Error(ErrorCode::ValidationError, "series order must be at least 1");
  if (n > max_order) {
    throw Error(ErrorCode::OrderTooLarge, "order " + std::to_string(n) + " above " + std::to_string(max_order));
  }
  const int nvars = static_cast<int>(vs.size());
  const Eigen::Index dim = split.dim();
  const CoefficientTable table(n);
  const Matrix& p0 = split.p0;

  std::vector<Matrix> vd, vod;
  for (const Matrix& v : vs) {
    if (v.rows() != dim || v.cols() != dim) throw Error(ErrorCode::DimMismatch, "perturbation dimension");
    BlockParts parts = block_split(v, p0);
    vd.push_back(std::move(parts.diag));
    vod.push_back(std::move(parts.offdiag));
  }

  GlobalSeries out{OperatorSeries(nvars, n, dim), OperatorSeries(nvars, n, dim)};
  const std::vector<Monomial> monomials = monomials_up_to(nvars, n);
  // nested[k][m] = sum over S_{m_1} ... S_{m_k} applied to V_od,e with
  // m_1 + ... + m_k + e = m.
  std::vector<std::map<Monomial, Matrix, MonomialLess>> nested(static_cast<std::size_t>(n));
  std::map<Monomial, Matrix, MonomialLess> s;

  out.heff.set(monomials.front(), p0 * split.h0 * p0);
  for (const Monomial& m : monomials) {
    const int d = total_degree(m);
    if (d == 0) continue;
    if (d == 1) {
      int k = 0;
      while (m[static_cast<std::size_t>(k)] == 0) ++k;
      nested[0][m] = vod[static_cast<std::size_t>(k)];
      const Matrix s1 = superop_L(split, vod[static_cast<std::size_t>(k)]);
      s[m] = s1;
      out.s.set(m, s1);
      out.heff.set(m, p0 * vs[static_cast<std::size_t>(k)] * p0);
      continue;
    }
    for (int k = 1; k <= d - 1; ++k) {
      Matrix acc = Matrix::Zero(dim, dim);
      bool any = false;
      for (const auto& [m1, s1] : s) {
        if (total_degree(m1) > d - k || !divides(m1, m)) continue;
        auto it = nested[static_cast<std::size_t>(k - 1)].find(minus(m, m1));
        if (it == nested[static_cast<std::size_t>(k - 1)].end()) continue;
        acc += commutator(s1, it->second);
        any = true;
      }
      if (any) nested[static_cast<std::size_t>(k)][m] = std::move(acc);
    }

    Matrix rhs = Matrix::Zero(dim, dim);
    for (int k = 0; k < nvars; ++k) {
      if (m[static_cast<std::size_t>(k)] == 0) continue;
      auto it = s.find(minus(m, unit_monomial(nvars, k)));
      if (it != s.end()) rhs -= commutator(vd[static_cast<std::size_t>(k)], it->second);
    }
    Matrix heff = Matrix::Zero(dim, dim);
    for (int k = 1; k <= d - 1; ++k) {
      auto it = nested[static_cast<std::size_t>(k)].find(m);
      if (it == nested[static_cast<std::size_t>(k)].end()) continue;
      if (k % 2 == 0) {
        rhs += table.a_value(k) * it->second;
      } else {
        heff += table.b_value(k) * it->second;
      }
    }
    const Matrix sm = superop_L(split, rhs);
    s[m] = sm;
    out.s.set(m, sm);
    out.heff.set(m, p0 * heff * p0);
  }
  return out;
}

namespace {

SeriesCoefficients univariate(const OperatorSeries& series, SeriesCoefficients::BlockTag tag) {
  SeriesCoefficients out;
  out.tag = tag;
  out.coeffs = series.specialize();
  return out;
}

}  // namespace

SeriesCoefficients generator_series(const PerturbedProblem& prob, int n, int max_order) {
  return univariate(global_sw_series(prob.split, {prob.v}, n, max_order).s,
                    SeriesCoefficients::BlockTag::off_diagonal);
}

SeriesCoefficients heff_series(const PerturbedProblem& prob, int n, int max_order) {
  return univariate(global_sw_series(prob.split, {prob.v}, n, max_order).heff,
                    SeriesCoefficients::BlockTag::low_block);
}

namespace {

struct Pieces {
  Matrix vd, vod, s1, lvds1;
};

Pieces pieces(const PerturbedProblem& prob) {
  BlockParts parts = block_split(prob.v, prob.split.p0);
  Pieces p{parts.diag, parts.offdiag, Matrix(), Matrix()};
  p.s1 = superop_L(prob.split, p.vod);
  p.lvds1 = superop_L(prob.split, commutator(p.vd, p.s1));
  return p;
}

}  // namespace

Matrix heff_order3(const PerturbedProblem& prob) {
  const Pieces p = pieces(prob);
  const Matrix& p0 = prob.split.p0;
  return 0.5 * p0 * commutator(p.vod, p.lvds1) * p0;
}

Matrix heff_order4(const PerturbedProblem& prob) {
  const Pieces p = pieces(prob);
  const Matrix& p0 = prob.split.p0;
  const CoefficientTable table(3);
  const double b1 = table.b_value(1);
  const double b3 = table.b_value(3);
  const double a2 = table.a_value(2);
  const Matrix lvd2 = superop_L(prob.split, commutator(p.vd, p.lvds1));
  const Matrix s1s1v = commutator(p.s1, commutator(p.s1, p.vod));
  const Matrix s1cubed = commutator(p.s1, s1s1v);
  const Matrix inner = -b1 * commutator(p.vod, lvd2) - b1 * a2 * commutator(p.vod, superop_L(prob.split, s1s1v)) +
                       b3 * s1cubed;
  return p0 * inner * p0;
}

std::optional<Matrix> heff_order4_simplified(const PerturbedProblem& prob) {
  const Matrix& p0 = prob.split.p0;
  const Matrix h0p0 = p0 * prob.split.h0 * p0;
  const Complex c = p0.trace() == Complex(0.0) ? Complex(0.0) : h0p0.trace() / p0.trace();
  if (operator_norm(h0p0 - c * p0) > structural_tolerance(prob.split.h0)) return std::nullopt;
  const Pieces p = pieces(prob);
  const Matrix lvd2 = superop_L(prob.split, commutator(p.vd, p.lvds1));
  const Matrix s1cubed = commutator(p.s1, commutator(p.s1, commutator(p.s1, p.vod)));
  return Matrix(p0 * (0.125 * s1cubed - 0.5 * commutator(p.vod, lvd2)) * p0);
}

double convergence_radius(const SpectralSplit& split, const Matrix& v) {
  const double vnorm = operator_norm(v);
  if (vnorm == 0.0 || std::isinf(split.gap)) return std::numeric_limits<double>::infinity();
  const double eps_c = split.gap / (2.0 * vnorm);
  return eps_c / (8.0 * (1.0 + 2.0 * split.low_spread() / (std::numbers::pi * split.gap)));
}

double block_diagonal_norm(const Matrix& x, const Matrix& p0) { return operator_norm(block_diagonal_part(x, p0)); }

}  // namespace swolff
