#include "swolff/rational.hpp"

#include "swolff/error.hpp"

namespace swolff {

namespace {

Rational binomial(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Rational power_of_two(int n) {
  boost::multiprecision::cpp_int p = 1;
  p <<= n;
  return Rational(p);
}

}  // namespace

CoefficientTable::CoefficientTable(int max_order) : max_order_(max_order) {
  if (max_order < 0 || max_order > max_supported_order) {
    throw Error(ErrorCode::OrderTooLarge, "coefficient table order " + std::to_string(max_order) +
                                              " outside [0, " + std::to_string(max_supported_order) + "]");
  }
  // b_m needs B_{m+1}.
  const int top = max_order + 1;
  bernoulli_.resize(static_cast<std::size_t>(top) + 1);
  bernoulli_[0] = 1;
  for (int m = 1; m <= top; ++m) {
    Rational sum = 0;
    for (int k = 0; k < m; ++k) sum += binomial(m + 1, k) * bernoulli_[static_cast<std::size_t>(k)];
    bernoulli_[static_cast<std::size_t>(m)] = -sum / (m + 1);
  }
  for (int m = 0; m <= max_order; ++m) {
    a_values_.push_back(to_double(a(m)));
    b_values_.push_back(to_double(b(m)));
  }
}

void CoefficientTable::check(int m) const {
  if (m < 0 || m > max_order_) {
    throw Error(ErrorCode::OrderTooLarge, "coefficient index " + std::to_string(m) + " beyond table order " +
                                              std::to_string(max_order_));
  }
}

const Rational& CoefficientTable::bernoulli(int m) const {
  if (m < 0 || m > max_order_ + 1) {
    throw Error(ErrorCode::OrderTooLarge, "Bernoulli index " + std::to_string(m) + " beyond table");
  }
  return bernoulli_[static_cast<std::size_t>(m)];
}

Rational CoefficientTable::a(int m) const {
  check(m);
  if (m % 2 != 0) return 0;
  return power_of_two(m) * bernoulli_[static_cast<std::size_t>(m)] / factorial(m);
}

Rational CoefficientTable::b(int m) const {
  check(m);
  if (m % 2 == 0) return 0;
  const int two_n = m + 1;
  return 2 * (power_of_two(two_n) - 1) * bernoulli_[static_cast<std::size_t>(two_n)] / factorial(two_n);
}

double CoefficientTable::a_value(int m) const {
  check(m);
  return a_values_[static_cast<std::size_t>(m)];
}

double CoefficientTable::b_value(int m) const {
  check(m);
  return b_values_[static_cast<std::size_t>(m)];
}

CoefficientTable bernoulli_coefficients(int max_order) { return CoefficientTable(max_order); }

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace swolff
