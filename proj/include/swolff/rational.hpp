#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace swolff {

using Rational = boost::multiprecision::cpp_rational;

/// Taylor coefficients of x coth(x) (a, even orders) and tanh(x/2)
/// (b, odd orders) as exact rationals.
class CoefficientTable {
 public:
  static constexpr int max_supported_order = 40;

  explicit CoefficientTable(int max_order);

  int max_order() const { return max_order_; }
  /// Bernoulli number B_m with B_1 = -1/2.
  const Rational& bernoulli(int m) const;
  /// a_m = 2^m B_m / m! for even m, zero for odd m.
  Rational a(int m) const;
  /// b_m = 2 (2^{m+1} - 1) B_{m+1} / (m+1)! for odd m, zero for even m.
  Rational b(int m) const;

  double a_value(int m) const;
  double b_value(int m) const;

 private:
  void check(int m) const;

  int max_order_;
  std::vector<Rational> bernoulli_;
  std::vector<double> a_values_;
  std::vector<double> b_values_;
};

/// Throws OrderTooLarge above CoefficientTable::max_supported_order.
CoefficientTable bernoulli_coefficients(int max_order);

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace swolff
