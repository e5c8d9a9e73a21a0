#pragma once

// Truncated operator-valued power series in one or several commuting
// formal variables.

#include <map>
#include <vector>

#include "swolff/operator_core.hpp"

namespace swolff {

/// Degree per variable.
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

/// m1 <= m componentwise.
bool divides(const Monomial& m1, const Monomial& m);

Monomial unit_monomial(int nvars, int var, int degree = 1);

/// Canonical ordering: total degree first, then lexicographic.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All monomials in `nvars` variables of total degree <= order, in
/// canonical order. Throws TooManyMonomials above `cap`.
std::vector<Monomial> monomials_up_to(int nvars, int order, std::size_t cap = 20000);

class OperatorSeries {
 public:
  using Terms = std::map<Monomial, Matrix, MonomialLess>;

  OperatorSeries(int nvars, int order, Eigen::Index dim);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  Eigen::Index dim() const { return dim_; }
  const Terms& terms() const { return terms_; }

  /// Adds x to the coefficient of m; ignored above the truncation order.
  void add(const Monomial& m, const Matrix& x);
  void set(const Monomial& m, const Matrix& x);
  bool contains(const Monomial& m) const { return terms_.count(m) != 0; }
  /// Zero when absent.
  Matrix coefficient(const Monomial& m) const;

  OperatorSeries operator+(const OperatorSeries& o) const;
  OperatorSeries operator-(const OperatorSeries& o) const;
  OperatorSeries operator*(const OperatorSeries& o) const;
  OperatorSeries scaled(Complex c) const;

  static OperatorSeries constant(int nvars, int order, const Matrix& x);

  /// exp of a series with vanishing constant term.
  OperatorSeries exp() const;
  /// log of a series whose constant term is the identity.
  OperatorSeries log() const;

  /// Sets every variable to the same value and groups by total degree:
  /// result[q] is the coefficient of eps^q.
  std::vector<Matrix> specialize() const;

  Matrix evaluate(const std::vector<double>& values) const;

 private:
  void check_compatible(const OperatorSeries& o) const;

  int nvars_;
  int order_;
  Eigen::Index dim_;
  Terms terms_;
};

}  // namespace swolff
