#pragma once

#include <vector>

#include "swolff/operator_core.hpp"

namespace swolff {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

/// Eigendecomposition of H0 together with the low-energy window I0.
///
/// `gap` is the smallest distance between an in-window and an out-window
/// eigenvalue. When every eigenvalue lies in the window the gap is +inf.
/// When the window touches one edge of the spectrum the gap is the
/// one-sided distance to the remaining eigenvalues.
struct SpectralSplit {
  Matrix h0;
  EigenSystem eig;
  Interval window;
  std::vector<Eigen::Index> low_indices;
  std::vector<bool> low_mask;
  Matrix p0;
  Matrix q0;
  double gap = 0.0;

  Eigen::Index dim() const { return h0.rows(); }
  Eigen::Index rank() const { return static_cast<Eigen::Index>(low_indices.size()); }
  bool is_low(Eigen::Index i) const { return low_mask[static_cast<std::size_t>(i)]; }
  /// Columns of the eigenvectors spanning P0.
  Matrix low_basis() const;
  /// Width of the convex hull of the in-window eigenvalues.
  double low_spread() const;
};

/// Throws EmptyWindow, AmbiguousBoundary or GapTooSmall.
SpectralSplit make_split(const Matrix& h0, Interval window);

/// H = H0 + epsilon V with |epsilon| checked against epsilon_c = gap / (2 ||V||).
struct PerturbedProblem {
  SpectralSplit split;
  Matrix v;
  double epsilon = 0.0;
  double epsilon_c = 0.0;

  Matrix hamiltonian() const { return split.h0 + epsilon * v; }
  /// Hull of the in-window eigenvalues of H0 widened by gap/2 on both
  /// sides; equals the widened I0 when I0 is tight.
  Interval widened_window() const;
};

/// Throws NotHermitian or DimMismatch.
PerturbedProblem make_problem(SpectralSplit split, Matrix v, double epsilon);

/// Spectral projector of H0 + eps V onto the widened window. Throws
/// EpsilonTooLarge, AmbiguousBoundary or RankMismatch.
Matrix perturbed_projector(const PerturbedProblem& prob);

struct ExactSW {
  Matrix u;           // direct rotation P -> P0
  Matrix s;           // its generator
  Matrix p;           // perturbed projector
  Matrix heff_full;   // P0 U H U^dagger P0
  Matrix heff_low;    // compressed to the low eigenbasis of H0
  RealVector low_spectrum;  // eigenvalues of H inside the widened window
  double projector_distance = 0.0;
  double block_residual = 0.0;  // ||O(U H U^dagger)||
};

ExactSW exact_sw_transform(const PerturbedProblem& prob);

/// Builds the joint non-interacting problem H0^A x I + I x H0^B with
/// perturbation eps_A V^A x I + I x eps_B V^B and returns
/// ||H_eff^{AB} - (H_eff^A x P0^B + P0^A x H_eff^B)||.
double additivity_residual(const PerturbedProblem& a, const PerturbedProblem& b);

}  // namespace swolff
