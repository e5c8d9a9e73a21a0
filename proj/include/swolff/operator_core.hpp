#pragma once

// Dense complex operators, spectral decompositions and the block-structure
// superoperators D and O relative to a projector.

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "swolff/error.hpp"

namespace swolff {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Structural claims an operator can be checked against.
enum class Structure { none, hermitian, anti_hermitian, unitary, projector };

namespace tol {
// Relative structural tolerance, multiplied by max(1, ||X||).
inline constexpr double structural = 1e-10;
// Relative eigen-reconstruction tolerance, multiplied by ||X||.
inline constexpr double eigen = 1e-9;
// Angular distance (radians) from the negative real axis.
inline constexpr double branch = 1e-6;
// Direct-rotation and block-structure residuals.
inline constexpr double rotation = 1e-9;
// Eigenvalue/window-endpoint coincidence, relative to max(1, ||H0||).
inline constexpr double window = 1e-9;
// Minimal admissible gap, relative to ||H0||.
inline constexpr double gap_floor = 1e-8;
// Support components below this (times scale) are discarded.
inline constexpr double support = 1e-12;
}  // namespace tol

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns are orthonormal eigenvectors
};

enum class MatrixFunction { principal_sqrt, principal_log };

/// Largest singular value.
double operator_norm(const Matrix& x);

/// max(1, ||X||_F / dim); the reference magnitude for relative tolerances.
double scale(const Matrix& x);

/// tol::structural * max(1, ||X||).
double structural_tolerance(const Matrix& x);

double hermiticity_residual(const Matrix& x);
double anti_hermiticity_residual(const Matrix& x);
double unitarity_residual(const Matrix& x);
double projector_residual(const Matrix& x);
double normality_residual(const Matrix& x);

bool satisfies(const Matrix& x, Structure s);

/// Throws the matching Error if `x` is not square or fails the structural claim.
void require(const Matrix& x, Structure s, std::string_view name = "operator");

/// Hermitian eigendecomposition with ascending real eigenvalues.
EigenSystem spectral_decompose(const Matrix& x);

/// Principal square root or logarithm of a normal operator, evaluated on
/// the diagonal of its complex Schur form. f(1) = 1 branch, cut along the
/// negative real axis.
Matrix normal_matrix_function(const Matrix& x, MatrixFunction f);

inline Matrix principal_sqrt(const Matrix& x) {
  return normal_matrix_function(x, MatrixFunction::principal_sqrt);
}
inline Matrix principal_log(const Matrix& x) {
  return normal_matrix_function(x, MatrixFunction::principal_log);
}

/// exp(X) for anti-hermitian X, computed through the eigenbasis of iX so
/// the result is unitary to rounding.
Matrix exp_anti_hermitian(const Matrix& x);

/// exp(X) for a general square matrix (Pade scaling and squaring).
Matrix exp_general(const Matrix& x);

struct BlockParts {
  Matrix diag;     // P0 X P0 + Q0 X Q0
  Matrix offdiag;  // P0 X Q0 + Q0 X P0
};

BlockParts block_split(const Matrix& x, const Matrix& p0);

/// D(X) and O(X) relative to P0.
Matrix block_diagonal_part(const Matrix& x, const Matrix& p0);
Matrix block_off_diagonal_part(const Matrix& x, const Matrix& p0);

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix kron(const Matrix& a, const Matrix& b);

Matrix identity(Eigen::Index dim);

/// Pauli matrices, mostly for examples and tests.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

}  // namespace swolff
