#include "swolff/exact_sw.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "swolff/direct_rotation.hpp"

namespace swolff {

namespace {

double window_tolerance(const Matrix& h) { return tol::window * std::max(1.0, operator_norm(h)); }

void check_endpoints(const RealVector& values, const Interval& w, double t) {
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double e = values(i);
    if (std::abs(e - w.lo) <= t || std::abs(e - w.hi) <= t) {
      throw Error(ErrorCode::AmbiguousBoundary,
                  "eigenvalue " + std::to_string(e) + " sits on a window endpoint");
    }
  }
}

}  // namespace

Matrix SpectralSplit::low_basis() const {
  Matrix b(dim(), rank());
  for (std::size_t k = 0; k < low_indices.size(); ++k) {
    b.col(static_cast<Eigen::Index>(k)) = eig.vectors.col(low_indices[k]);
  }
  return b;
}

double SpectralSplit::low_spread() const {
  if (low_indices.empty()) return 0.0;
  // Eigenvalues are ascending, so the in-window ones are contiguous.
  return eig.values(low_indices.back()) - eig.values(low_indices.front());
}

SpectralSplit make_split(const Matrix& h0, Interval window) {
  if (window.hi < window.lo) throw Error(ErrorCode::EmptyWindow, "window has hi < lo");
  SpectralSplit split;
  split.h0 = h0;
  split.eig = spectral_decompose(h0);
  split.window = window;
  const double t = window_tolerance(h0);
  check_endpoints(split.eig.values, window, t);

  const Eigen::Index n = h0.rows();
  split.low_mask.assign(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (window.contains(split.eig.values(i))) {
      split.low_indices.push_back(i);
      split.low_mask[static_cast<std::size_t>(i)] = true;
    }
  }
  if (split.low_indices.empty()) throw Error(ErrorCode::EmptyWindow, "no eigenvalue of H0 in the window");

  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!split.is_low(i)) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (split.is_low(j)) continue;
      gap = std::min(gap, std::abs(split.eig.values(i) - split.eig.values(j)));
    }
  }
  const double floor = tol::gap_floor * operator_norm(h0);
  if (!(gap > floor)) throw Error(ErrorCode::GapTooSmall, "gap " + std::to_string(gap) + " below floor");
  split.gap = gap;

  const Matrix b = split.low_basis();
  split.p0 = b * b.adjoint();
  split.q0 = identity(n) - split.p0;
  return split;
}

Interval PerturbedProblem::widened_window() const {
  const double lo = split.eig.values(split.low_indices.front());
  const double hi = split.eig.values(split.low_indices.back());
  return {lo - split.gap / 2.0, hi + split.gap / 2.0};
}

PerturbedProblem make_problem(SpectralSplit split, Matrix v, double epsilon) {
  if (v.rows() != split.dim() || v.cols() != split.dim()) {
    throw Error(ErrorCode::DimMismatch, "V and H0 have different dimensions");
  }
  require(v, Structure::hermitian, "V");
  PerturbedProblem prob;
  const double vnorm = operator_norm(v);
  prob.epsilon_c = vnorm > 0.0 ? split.gap / (2.0 * vnorm) : std::numeric_limits<double>::infinity();
  prob.split = std::move(split);
  prob.v = std::move(v);
  prob.epsilon = epsilon;
  return prob;
}

Matrix perturbed_projector(const PerturbedProblem& prob) {
  if (!(std::abs(prob.epsilon) < prob.epsilon_c)) {
    throw Error(ErrorCode::EpsilonTooLarge, "|epsilon| = " + std::to_string(std::abs(prob.epsilon)) +
                                                " >= epsilon_c = " + std::to_string(prob.epsilon_c));
  }
  const Matrix h = prob.hamiltonian();
  const EigenSystem eig = spectral_decompose(h);
  const Interval wide = prob.widened_window();
  check_endpoints(eig.values, wide, window_tolerance(h));

  Matrix p = Matrix::Zero(h.rows(), h.cols());
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (!wide.contains(eig.values(i))) continue;
    p += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    ++count;
  }
  if (count != prob.split.rank()) {
    throw Error(ErrorCode::RankMismatch, "perturbed window holds " + std::to_string(count) +
                                             " eigenvalues, expected " + std::to_string(prob.split.rank()));
  }
  return p;
}

ExactSW exact_sw_transform(const PerturbedProblem& prob) {
  ExactSW out;
  out.p = perturbed_projector(prob);
  const RotationPair pair(out.p, prob.split.p0);
  out.projector_distance = pair.distance();
  out.u = direct_rotation(pair);
  out.s = rotation_generator(pair);

  const Matrix h = prob.hamiltonian();
  const Matrix rotated = out.u * h * out.u.adjoint();
  const Matrix& p0 = prob.split.p0;
  out.block_residual = operator_norm(block_off_diagonal_part(rotated, p0));
  out.heff_full = p0 * rotated * p0;
  out.heff_full = 0.5 * (out.heff_full + out.heff_full.adjoint()).eval();
  const Matrix b = prob.split.low_basis();
  out.heff_low = b.adjoint() * out.heff_full * b;

  const EigenSystem eig = spectral_decompose(h);
  const Interval wide = prob.widened_window();
  std::vector<double> low;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (wide.contains(eig.values(i))) low.push_back(eig.values(i));
  }
  out.low_spectrum = Eigen::Map<RealVector>(low.data(), static_cast<Eigen::Index>(low.size()));
  return out;
}

double additivity_residual(const PerturbedProblem& a, const PerturbedProblem& b) {
  const ExactSW sa = exact_sw_transform(a);
  const ExactSW sb = exact_sw_transform(b);
  const Matrix ia = identity(a.split.dim());
  const Matrix ib = identity(b.split.dim());

  const Matrix h = kron(a.hamiltonian(), ib) + kron(ia, b.hamiltonian());
  const Matrix p0 = kron(a.split.p0, b.split.p0);
  // Without interactions the perturbed low subspace is the product one.
  const RotationPair joint(kron(sa.p, sb.p), p0);
  const Matrix u = direct_rotation(joint);
  const Matrix heff = p0 * u * h * u.adjoint() * p0;
  const Matrix sum = kron(sa.heff_full, b.split.p0) + kron(a.split.p0, sb.heff_full);
  return operator_norm(heff - sum);
}

}  // namespace swolff
