#pragma once

#include <string>
#include <vector>

#include "swolff/lattice_model.hpp"
#include "swolff/local_sw.hpp"
#include "swolff/perturbative_sw.hpp"
#include "swolff/power_series.hpp"

namespace swolff {

enum class SeriesMethod { global_recursion, local_sw };

std::string_view to_string(SeriesMethod m);

/// One formal variable per edge; coefficients are full-space operators.
struct EdgeMonomialSeries {
  SeriesMethod method = SeriesMethod::global_recursion;
  OperatorSeries terms{0, 0, 0};
};

inline constexpr std::size_t max_edge_monomials = 1000;

/// Effective Hamiltonian with every edge coupling carried by its own
/// variable. Throws TooManyMonomials.
EdgeMonomialSeries multivariate_heff(const SpinLattice& lattice, int n, SeriesMethod method);

/// Generator K of e^K = e^S e^{-T}, one variable per edge.
OperatorSeries multivariate_k(const SpinLattice& lattice, int n);

struct MonomialCheck {
  Monomial degrees;
  int q = 0;
  std::vector<int> edges;   // C
  SiteSet sites = 0;        // Lambda(C)
  bool connected = false;
  double norm = 0.0;
  double outside_residual = 0.0;  // component outside Lambda(C)
  bool nonzero = false;
  bool violation = false;
};

struct LinkedClusterReport {
  std::vector<MonomialCheck> monomials;
  double max_outside_residual = 0.0;
  /// Largest coefficient norm among monomials whose edges are
  /// disconnected.
  double max_disconnected_norm = 0.0;
  int violations = 0;
  double threshold = 0.0;
};

/// Checks every coefficient of degree >= 1 on the low-space compression,
/// where P0 becomes the identity. `threshold` is relative to scale.
LinkedClusterReport linked_cluster_report(const SpinLattice& lattice, const OperatorSeries& series,
                                          double threshold = 1e-9);

/// max_q ||sum_{|m| = q} c_m - c_q^univariate||.
double specialization_residual(const SpinLattice& lattice, const EdgeMonomialSeries& series);

/// K_j for j <= n from truncated series S and T (coefficient 0 ignored).
SeriesCoefficients equivalence_generator(const std::vector<Matrix>& s, const std::vector<Matrix>& t, int n);

struct EquivalenceResult {
  double residual = 0.0;            // ||M - e^K L e^{-K}|| on P0
  double untransformed = 0.0;       // ||M - L|| on P0
  std::vector<double> k_offdiag;    // ||O(K_j)||, j = 1 .. n
  SeriesCoefficients k;
};

EquivalenceResult equivalence_residual(const SpinLattice& lattice, double epsilon, int n);

}  // namespace swolff
