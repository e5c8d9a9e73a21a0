#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "swolff/operator_core.hpp"

using namespace swolff;

TEST_CASE("operator norm matches the largest singular value") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = oracle::gaussian_hermitian(rng, 5) + Complex(0, 1) * oracle::gaussian_hermitian(rng, 5);
    CHECK(operator_norm(a) == doctest::Approx(oracle::opnorm(a)).epsilon(1e-12));
  }
  CHECK(operator_norm(Matrix(0, 0)) == 0.0);
}

TEST_CASE("structure predicates") {
  CHECK(satisfies(pauli_x(), Structure::hermitian));
  CHECK(satisfies(pauli_y(), Structure::unitary));
  CHECK(satisfies(Complex(0, 1) * pauli_z(), Structure::anti_hermitian));
  Matrix p = Matrix::Zero(2, 2);
  p(0, 0) = 1;
  CHECK(satisfies(p, Structure::projector));
  CHECK_FALSE(satisfies(2.0 * p, Structure::projector));
  Matrix nh = pauli_x();
  nh(0, 1) = 2;
  CHECK_THROWS_AS(require(nh, Structure::hermitian, "X"), Error);
  try {
    require(nh, Structure::hermitian, "X");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("principal square root and logarithm of unitaries") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix w = oracle::gaussian_unitary(rng, 6);
    Vector phases(6);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (int i = 0; i < 6; ++i) phases(i) = std::exp(Complex(0, angle(rng)));
    const Matrix u = w * phases.asDiagonal() * w.adjoint();
    const Matrix r = principal_sqrt(u);
    CHECK(operator_norm(r * r - u) < 1e-12);
    const Matrix l = principal_log(u);
    CHECK(anti_hermiticity_residual(l) < 1e-12);
    CHECK(operator_norm(exp_anti_hermitian(0.5 * (l - l.adjoint())) - u) < 1e-12);
    CHECK(operator_norm(l) < std::numbers::pi);
  }
}

TEST_CASE("matrix functions reject the branch cut and non-normal input") {
  const Matrix minus = -identity(2);
  CHECK_THROWS_AS(principal_sqrt(minus), Error);
  Matrix jordan = Matrix::Zero(2, 2);
  jordan(0, 1) = 1;
  jordan(0, 0) = jordan(1, 1) = 1;
  try {
    principal_log(jordan);
    FAIL("expected NotNormal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormal);
  }
}

TEST_CASE("exp of anti-hermitian agrees with the general exponential") {
  std::mt19937_64 rng(9);
  const Matrix h = oracle::gaussian_hermitian(rng, 5);
  const Matrix x = Complex(0, -1) * h;
  CHECK(operator_norm(exp_anti_hermitian(x) - exp_general(x)) < 1e-12);
  CHECK(unitarity_residual(exp_anti_hermitian(x)) < 1e-12);
}

TEST_CASE("block parts add up and kron matches an explicit embedding") {
  std::mt19937_64 rng(3);
  const Matrix x = oracle::gaussian_hermitian(rng, 4);
  Matrix p0 = Matrix::Zero(4, 4);
  p0(0, 0) = p0(2, 2) = 1;
  const BlockParts parts = block_split(x, p0);
  CHECK(operator_norm(parts.diag + parts.offdiag - x) < 1e-14);
  CHECK(operator_norm(p0 * parts.offdiag * p0) < 1e-14);
  CHECK(operator_norm(commutator(parts.diag, p0)) < 1e-14);

  const Matrix a = oracle::gaussian_hermitian(rng, 2);
  const Matrix b = oracle::gaussian_hermitian(rng, 3);
  const Matrix ab = kron(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 3; ++l) CHECK(std::abs(ab(i * 3 + j, k * 3 + l) - a(i, k) * b(j, l)) < 1e-15);
}
