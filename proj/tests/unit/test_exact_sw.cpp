#include "doctest.h"
#include "oracles.hpp"
#include "swolff/exact_sw.hpp"
#include "swolff/random_models.hpp"

using namespace swolff;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ValidationError;
}

}  // namespace

TEST_CASE("spectral split of the two-level system") {
  const SpectralSplit s = make_split(diag2(0, 2), {-0.5, 0.5});
  CHECK(s.rank() == 1);
  CHECK(s.gap == doctest::Approx(2.0));
  CHECK(std::abs(s.p0(0, 0) - 1.0) < 1e-14);
  CHECK(std::isinf(make_split(diag2(0, 2), {-1, 3}).gap));
}

TEST_CASE("spectral split errors") {
  CHECK(code_of([] { make_split(diag2(0, 2), {0.5, 1.5}); }) == ErrorCode::EmptyWindow);
  CHECK(code_of([] { make_split(diag2(0, 2), {1, -1}); }) == ErrorCode::EmptyWindow);
  CHECK(code_of([] { make_split(diag2(0, 2), {-0.5, 2.0}); }) == ErrorCode::AmbiguousBoundary);
  Matrix close = Matrix::Zero(3, 3);
  close(1, 1) = 5e-9;
  close(2, 2) = 1;
  CHECK(code_of([&] { make_split(close, {-0.5, 2.5e-9}); }) == ErrorCode::GapTooSmall);
}

TEST_CASE("two-level exact transform matches the closed form") {
  const SpectralSplit s = make_split(diag2(0, 2), {-0.5, 0.5});
  for (double eps : {0.05, 0.2, 0.6, 0.95}) {
    const ExactSW x = exact_sw_transform(make_problem(s, pauli_x(), eps));
    CHECK(std::abs(x.heff_low(0, 0).real() - oracle::two_level_ground(2.0, eps)) < 1e-12);
    CHECK(x.projector_distance <= 2 * eps / 2.0 + 1e-12);
  }
  CHECK(code_of([&] { exact_sw_transform(make_problem(s, pauli_x(), 1.0)); }) == ErrorCode::EpsilonTooLarge);
}

TEST_CASE("zero perturbation leaves H0 unchanged") {
  Rng rng(2);
  const RandomModel m = random_gapped_model(rng, {});
  const SpectralSplit s = make_split(m.h0, m.window);
  const ExactSW x = exact_sw_transform(make_problem(s, m.v, 0.0));
  CHECK(operator_norm(x.u - identity(8)) < 1e-12);
  CHECK(operator_norm(x.heff_full - s.p0 * m.h0 * s.p0) < 1e-12);
}

TEST_CASE("random models: spectrum, block structure and distance bound") {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    ModelShape shape;
    shape.low_spread = trial % 2 ? 0.3 : 0.0;
    const RandomModel m = random_gapped_model(rng, shape);
    const SpectralSplit s = make_split(m.h0, m.window);
    const PerturbedProblem prob = make_problem(s, m.v, 0.5 * s.gap / 2.0);
    const ExactSW x = exact_sw_transform(prob);
    CHECK(x.block_residual < 1e-10);
    CHECK(x.projector_distance <= 2 * prob.epsilon / s.gap + 1e-12);
    const oracle::ExactLong ref = oracle::exact_heff_long(m.h0, m.v, prob.epsilon, s.eig.values(0),
                                                         s.eig.values(1), s.gap);
    CHECK(operator_norm(x.heff_full - oracle::narrow(ref.heff)) < 1e-12);
  }
}

TEST_CASE("perturbed projector rank") {
  const SpectralSplit s = make_split(diag2(0, 2), {-0.5, 0.5});
  const Matrix p = perturbed_projector(make_problem(s, pauli_x(), 0.3));
  CHECK(std::abs(p.trace().real() - 1.0) < 1e-12);
  CHECK(operator_norm(p - s.p0) <= 0.3 + 1e-12);
}

TEST_CASE("non-hermitian perturbation is rejected") {
  Matrix v = pauli_x();
  v(0, 1) = 3;
  const SpectralSplit s = make_split(diag2(0, 2), {-0.5, 0.5});
  CHECK(code_of([&] { make_problem(s, v, 0.1); }) == ErrorCode::NotHermitian);
  CHECK(code_of([&] { make_problem(s, identity(3), 0.1); }) == ErrorCode::DimMismatch);
}

TEST_CASE("additivity for non-interacting subsystems") {
  Rng rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const RandomModel a = random_gapped_model(rng, {3, 1, 1.0, 0.0, 1.0});
    const RandomModel b = random_gapped_model(rng, {3, 2, 1.0, 0.2, 1.0});
    const PerturbedProblem pa = make_problem(make_split(a.h0, a.window), a.v, 0.2);
    const PerturbedProblem pb = make_problem(make_split(b.h0, b.window), b.v, 0.15);
    CHECK(additivity_residual(pa, pb) < 1e-9);
  }
}
