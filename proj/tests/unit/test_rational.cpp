#include "doctest.h"
#include "oracles.hpp"
#include "swolff/rational.hpp"

using namespace swolff;

TEST_CASE("coefficients match exact Taylor series of x coth x and tanh(x/2)") {
  const CoefficientTable t = bernoulli_coefficients(24);
  const auto a = oracle::xcothx(24);
  const auto b = oracle::tanh_half(24);
  for (int k = 0; k <= 24; ++k) {
    CHECK(t.a(k) == a[static_cast<std::size_t>(k)]);
    CHECK(t.b(k) == b[static_cast<std::size_t>(k)]);
    CHECK(t.a_value(k) == doctest::Approx(to_double(a[static_cast<std::size_t>(k)])));
  }
}

TEST_CASE("Bernoulli numbers") {
  const CoefficientTable t = bernoulli_coefficients(12);
  CHECK(to_string(t.bernoulli(0)) == "1");
  CHECK(to_string(t.bernoulli(1)) == "-1/2");
  CHECK(to_string(t.bernoulli(2)) == "1/6");
  CHECK(t.bernoulli(3) == 0);
  CHECK(to_string(t.bernoulli(12)) == "-691/2730");
}

TEST_CASE("order limits") {
  CHECK_NOTHROW(bernoulli_coefficients(40));
  try {
    bernoulli_coefficients(41);
    FAIL("expected OrderTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderTooLarge);
  }
  const CoefficientTable t = bernoulli_coefficients(4);
  CHECK_THROWS_AS(t.a(6), Error);
}
