#pragma once

#include <map>
#include <vector>

#include "swolff/lattice_model.hpp"
#include "swolff/perturbative_sw.hpp"
#include "swolff/power_series.hpp"

namespace swolff {

inline constexpr int max_local_order = 6;

/// Local superoperators relative to the projectors P_A = prod_{u in A} P_{0,u}.
class LocalSuperops {
 public:
  explicit LocalSuperops(const SpinLattice& lattice) : lattice_(lattice) {}

  /// H_{0,A}^{-1} Q_A X P_A - P_A X Q_A H_{0,A}^{-1} for X on A.
  Matrix L(SiteSet a, const Matrix& x);
  /// P_A X P_A + Q_A X Q_A for X on A.
  Matrix D(SiteSet a, const Matrix& x);
  Matrix O(SiteSet a, const Matrix& x) { return x - D(a, x); }

 private:
  struct Basis {
    EigenSystem eig;
    std::vector<bool> low;
    Matrix p;
  };
  const Basis& basis(SiteSet a);

  const SpinLattice& lattice_;
  std::map<SiteSet, Basis> cache_;
};

/// Throws SupportMismatch if X does not match the dimension of A.
Matrix superop_L_A(const SpinLattice& lattice, SiteSet a, const Matrix& x);

/// Coefficients of the local transformation, keyed by monomials in one
/// variable per perturbation V_k.
struct LocalSeries {
  int nvars = 0;
  int order = 0;
  using Map = std::map<Monomial, LocalOperator, MonomialLess>;
  Map t;  // T_m
  Map w;  // order-m part of e^T H e^{-T} without [T_m, H0]
  Map d;  // sum_A D_A(W_m,A)
};

/// Runs the T / V recursion for H0 + sum_k x_k V_k. With `next_order` the
/// W coefficients of total degree n + 1 are also produced.
LocalSeries local_sw_series(const SpinLattice& lattice, const std::vector<LocalOperator>& vs, int n,
                            bool next_order = false);

struct LocalityEntry {
  int j = 0;
  int t_locality = 0;      // of T_j
  int v_locality = 0;      // of V^(j-1)
  double v_strength = 0.0; // ||V^(j-1)||_1
  double identity_residual = 0.0;  // ||[T_j, H0] + V^(j-1) - sum_A D_A(V^(j-1)_A)||
};

struct LocalSWState {
  SpinLattice lattice;
  double epsilon = 0.0;
  int order = 0;
  std::vector<LocalOperator> t;     // T_1 .. T_n
  std::vector<LocalOperator> vseq;  // V^(0) .. V^(n)
  std::vector<LocalOperator> dseq;  // sum_A D_A(V^(j-1)_A), j = 1 .. n
  Matrix hn;
  Matrix heff_loc;
  /// P0 H0 P0, then P0 V^(j-1) P0 for j = 1 .. n.
  SeriesCoefficients heff_coefficients;
  std::vector<LocalityEntry> locality;

  /// sum_j eps^j T_j on the full space.
  Matrix generator() const;
};

/// Throws OrderTooLarge (n > 6) or DimensionCap.
LocalSWState build_local_sw(const SpinLattice& lattice, double epsilon, int n);

/// ||e^T (H0 + eps V) e^{-T} - H^<n>||.
double garbage_norm(const LocalSWState& state);

struct StabilityResult {
  bool stable = false;
  double lhs = 0.0;
  double gap = 0.0;
  std::map<int, double> strength_by_locality;
};

/// Sum over locality classes k >= 1 of 2^{k+2} J_k, compared with the gap.
/// Terms on the empty set are constants and do not count. Throws
/// NotBlockDiagonal if a term does not commute with its P_A.
StabilityResult stability_check(const SpinLattice& lattice, const LocalOperator& dec, double gap);
StabilityResult stability_check(const SpinLattice& lattice, const LocalOperator& dec);

}  // namespace swolff
