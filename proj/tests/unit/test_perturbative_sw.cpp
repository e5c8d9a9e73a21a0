#include "doctest.h"
#include "oracles.hpp"
#include "swolff/perturbative_sw.hpp"
#include "swolff/random_models.hpp"

using namespace swolff;

namespace {

PerturbedProblem two_level() {
  Matrix h0 = Matrix::Zero(2, 2);
  h0(1, 1) = 2;
  return make_problem(make_split(h0, {-0.5, 0.5}), pauli_x(), 0.0);
}

}  // namespace

TEST_CASE("two-level series coefficients") {
  const SeriesCoefficients h = heff_series(two_level(), 6);
  // Delta/2 - sqrt(Delta^2/4 + e^2) = -e^2/2 + e^4/8 - e^6/16 for Delta = 2.
  CHECK(std::abs(h.coeffs[2](0, 0).real() + 0.5) < 1e-12);
  CHECK(std::abs(h.coeffs[4](0, 0).real() - 0.125) < 1e-12);
  CHECK(std::abs(h.coeffs[6](0, 0).real() + 0.0625) < 1e-12);
  CHECK(operator_norm(h.coeffs[3]) < 1e-12);
}

TEST_CASE("second order matches the sum-over-states oracle") {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    ModelShape shape;
    shape.low_spread = 0.25;
    const RandomModel m = random_gapped_model(rng, shape);
    const SpectralSplit s = make_split(m.h0, m.window);
    const SeriesCoefficients h = heff_series(make_problem(s, m.v, 0.0), 2);
    CHECK(operator_norm(h.coeffs[2] - oracle::heff2(m.h0, m.v, s.low_mask)) < 1e-12);
    CHECK(operator_norm(h.coeffs[1] - s.p0 * m.v * s.p0) < 1e-12);
  }
}

TEST_CASE("closed forms for orders three and four") {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    ModelShape shape;
    shape.low_spread = trial % 2 ? 0.3 : 0.0;
    const RandomModel m = random_gapped_model(rng, shape);
    const PerturbedProblem prob = make_problem(make_split(m.h0, m.window), m.v, 0.0);
    const SeriesCoefficients h = heff_series(prob, 4);
    CHECK(operator_norm(heff_order3(prob) - h.coeffs[3]) < 1e-12);
    CHECK(operator_norm(heff_order4(prob) - h.coeffs[4]) < 1e-12);
    const auto simple = heff_order4_simplified(prob);
    CHECK(simple.has_value() == (shape.low_spread == 0.0));
    if (simple) CHECK(operator_norm(*simple - h.coeffs[4]) < 1e-12);
  }
}

TEST_CASE("generator is anti-hermitian and block-off-diagonal") {
  Rng rng(12);
  const RandomModel m = random_gapped_model(rng, {});
  const SpectralSplit s = make_split(m.h0, m.window);
  const SeriesCoefficients g = generator_series(make_problem(s, m.v, 0.0), 5);
  for (int q = 1; q <= 5; ++q) {
    CHECK(anti_hermiticity_residual(g.coeffs[static_cast<std::size_t>(q)]) < 1e-12);
    CHECK(block_diagonal_norm(g.coeffs[static_cast<std::size_t>(q)], s.p0) < 1e-12);
  }
}

TEST_CASE("series converges to the exact effective Hamiltonian") {
  Rng rng(19);
  const RandomModel m = random_gapped_model(rng, {});
  const SpectralSplit s = make_split(m.h0, m.window);
  const SeriesCoefficients h = heff_series(make_problem(s, m.v, 0.0), 8);
  const double eps = convergence_radius(s, m.v) / 2;
  const oracle::ExactLong ref = oracle::exact_heff_long(m.h0, m.v, eps, s.eig.values(0), s.eig.values(1), s.gap);
  double prev = 1.0;
  for (int n = 2; n <= 8; n += 2) {
    const double r = operator_norm(h.evaluate(eps, n) - oracle::narrow(ref.heff));
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev < 1e-12);
}

TEST_CASE("order limits") {
  CHECK_THROWS_AS(heff_series(two_level(), 11), Error);
  CHECK_NOTHROW(heff_series(two_level(), 12, 12));
}

TEST_CASE("superoperator L inverts ad H0 on the off-diagonal part") {
  Rng rng(21);
  const RandomModel m = random_gapped_model(rng, {});
  const SpectralSplit s = make_split(m.h0, m.window);
  const Matrix x = block_off_diagonal_part(m.v, s.p0);
  CHECK(operator_norm(commutator(m.h0, superop_L(s, x)) - x) < 1e-12);
}
