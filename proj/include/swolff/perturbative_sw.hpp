#pragma once

#include <optional>
#include <vector>

#include "swolff/exact_sw.hpp"
#include "swolff/power_series.hpp"
#include "swolff/rational.hpp"

namespace swolff {

inline constexpr int default_max_order = 10;

/// sum_q coeffs[q] eps^q.
struct SeriesCoefficients {
  enum class BlockTag { off_diagonal, low_block, none };

  std::vector<Matrix> coeffs;
  BlockTag tag = BlockTag::none;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  Matrix evaluate(double eps) const;
  /// Sum up to and including order n.
  Matrix evaluate(double eps, int n) const;
};

/// L(X)_{ij} = O(X)_{ij} / (E_i - E_j) in the H0 eigenbasis, only for pairs
/// with exactly one index in the window. Throws InternalGapError if a
/// denominator is below gap/2.
Matrix superop_L(const SpectralSplit& split, const Matrix& x);

/// Generator and effective Hamiltonian as series in one variable per
/// perturbation: H = H0 + sum_k x_k V_k.
struct GlobalSeries {
  OperatorSeries s;
  OperatorSeries heff;
};

/// Runs the S_n / H_eff,n recursion with operator coefficients keyed by
/// monomials, truncated at total degree n.
GlobalSeries global_sw_series(const SpectralSplit& split, const std::vector<Matrix>& vs, int n,
                              int max_order = default_max_order);

/// S_0 = 0, S_1, ..., S_n. Throws OrderTooLarge above max_order.
SeriesCoefficients generator_series(const PerturbedProblem& prob, int n, int max_order = default_max_order);

/// H0 P0, P0 V P0, H_eff,2, ..., H_eff,n.
SeriesCoefficients heff_series(const PerturbedProblem& prob, int n, int max_order = default_max_order);

/// Closed forms in terms of S_1 only.
Matrix heff_order3(const PerturbedProblem& prob);
Matrix heff_order4(const PerturbedProblem& prob);
/// Present only when H0 P0 is a multiple of P0.
std::optional<Matrix> heff_order4_simplified(const PerturbedProblem& prob);

/// eps_c / (8 (1 + 2|I0| / (pi gap))) with |I0| the spread of the
/// in-window eigenvalues.
double convergence_radius(const SpectralSplit& split, const Matrix& v);

/// ||D(X)|| relative to P0.
double block_diagonal_norm(const Matrix& x, const Matrix& p0);

}  // namespace swolff
