#pragma once

// Seeded random operators and models for property checks.

#include <random>

#include "swolff/exact_sw.hpp"
#include "swolff/lattice_model.hpp"

namespace swolff {

using Rng = std::mt19937_64;

/// Complex Gaussian matrix.
Matrix random_ginibre(Rng& rng, Eigen::Index dim);
/// Hermitian with operator norm `norm`.
Matrix random_hermitian(Rng& rng, Eigen::Index dim, double norm = 1.0);
/// Haar-like unitary (QR with phase correction).
Matrix random_unitary(Rng& rng, Eigen::Index dim);
/// Rank-`rank` orthogonal projector in a random basis.
Matrix random_projector(Rng& rng, Eigen::Index dim, Eigen::Index rank);
/// W P0 W^dagger with W = exp(t A) for a random anti-hermitian A, t chosen
/// so that ||P - P0|| lands in (0, max_distance).
Matrix nearby_projector(Rng& rng, const Matrix& p0, double max_distance);

struct RandomModel {
  Matrix h0;
  Matrix v;
  Interval window;
};

struct ModelShape {
  Eigen::Index dim = 8;
  Eigen::Index rank = 2;
  double gap = 1.0;
  /// In-window eigenvalues are drawn from [0, low_spread].
  double low_spread = 0.0;
  /// Out-of-window eigenvalues are drawn from [gap + low_spread, gap + low_spread + high_width].
  double high_width = 1.0;
};

/// H0 = W diag(E) W^dagger with a controlled gap and ||V|| = 1.
RandomModel random_gapped_model(Rng& rng, const ModelShape& shape);

/// Site Hamiltonian W diag(0 x low_dim, gap, ...) W^dagger with excited
/// levels in [gap, 2 gap].
Matrix random_site_h0(Rng& rng, Eigen::Index dim, int low_dim, double gap);

/// Open chain with random site Hamiltonians and random couplings of norm
/// `coupling`.
SpinLattice random_chain(Rng& rng, int sites, Eigen::Index site_dim, int low_dim, double gap, double coupling);

/// Random hermitian pair coupling commuting with P_{0,u} x P_{0,v}, norm 1.
Matrix random_block_diagonal_coupling(Rng& rng, const SpinLattice& lattice, int u, int v);

}  // namespace swolff
