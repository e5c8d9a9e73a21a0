#include "swolff/operator_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace swolff {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotProjector: return "NotProjector";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::BranchCutViolation: return "BranchCutViolation";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::SubspacesTooFar: return "SubspacesTooFar";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::AmbiguousBoundary: return "AmbiguousBoundary";
    case ErrorCode::GapTooSmall: return "GapTooSmall";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::InternalGapError: return "InternalGapError";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::TooManyClusters: return "TooManyClusters";
    case ErrorCode::TooManyMonomials: return "TooManyMonomials";
    case ErrorCode::NotBlockDiagonal: return "NotBlockDiagonal";
    case ErrorCode::InvalidLattice: return "InvalidLattice";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

double operator_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

double scale(const Matrix& x) {
  if (x.rows() == 0) return 1.0;
  return std::max(1.0, x.norm() / static_cast<double>(x.rows()));
}

double structural_tolerance(const Matrix& x) {
  return tol::structural * std::max(1.0, operator_norm(x));
}

double hermiticity_residual(const Matrix& x) {
  return (x - x.adjoint()).cwiseAbs().maxCoeff();
}

double anti_hermiticity_residual(const Matrix& x) {
  return (x + x.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_residual(const Matrix& x) {
  return operator_norm(x * x.adjoint() - identity(x.rows()));
}

double projector_residual(const Matrix& x) {
  return operator_norm(x * x - x);
}

double normality_residual(const Matrix& x) {
  return operator_norm(x * x.adjoint() - x.adjoint() * x);
}

bool satisfies(const Matrix& x, Structure s) {
  if (x.rows() != x.cols()) return false;
  if (x.rows() == 0) return true;
  const double t = structural_tolerance(x);
  switch (s) {
    case Structure::none:
      return true;
    case Structure::hermitian:
      return hermiticity_residual(x) <= t * scale(x);
    case Structure::anti_hermitian:
      return anti_hermiticity_residual(x) <= t * scale(x);
    case Structure::unitary:
      return unitarity_residual(x) <= t;
    case Structure::projector:
      return hermiticity_residual(x) <= t * scale(x) && projector_residual(x) <= t;
  }
  return false;
}

void require(const Matrix& x, Structure s, std::string_view name) {
  if (x.rows() != x.cols()) {
    throw Error(ErrorCode::DimMismatch, std::string(name) + " is not square");
  }
  if (satisfies(x, s)) return;
  const std::string n(name);
  switch (s) {
    case Structure::hermitian: throw Error(ErrorCode::NotHermitian, n + " not hermitian");
    case Structure::anti_hermitian: throw Error(ErrorCode::NotHermitian, n + " not anti-hermitian");
    case Structure::unitary: throw Error(ErrorCode::NotUnitary, n + " not unitary");
    case Structure::projector: throw Error(ErrorCode::NotProjector, n + " not a projector");
    case Structure::none: break;
  }
}

EigenSystem spectral_decompose(const Matrix& x) {
  require(x, Structure::hermitian, "spectral_decompose input");
  // Symmetrize so the solver sees an exactly hermitian matrix.
  const Matrix h = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix normal_matrix_function(const Matrix& x, MatrixFunction f) {
  if (x.rows() != x.cols()) throw Error(ErrorCode::DimMismatch, "matrix function of a non-square matrix");
  if (x.rows() == 0) return x;
  if (normality_residual(x) > structural_tolerance(x) * std::max(1.0, operator_norm(x))) {
    throw Error(ErrorCode::NotNormal, "matrix function requires a normal operator");
  }
  // For a normal matrix the Schur factor is diagonal up to rounding and the
  // Schur vectors are unitary, including inside degenerate clusters.
  Eigen::ComplexSchur<Matrix> schur(x);
  const Matrix& z = schur.matrixU();
  const Matrix& t = schur.matrixT();
  Vector fd(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const Complex lambda = t(i, i);
    const double r = std::abs(lambda);
    if (r > 0.0 && std::numbers::pi - std::abs(std::arg(lambda)) < tol::branch) {
      throw Error(ErrorCode::BranchCutViolation,
                  "eigenvalue " + std::to_string(lambda.real()) + "+" + std::to_string(lambda.imag()) +
                      "i lies on the branch cut");
    }
    if (f == MatrixFunction::principal_sqrt) {
      fd(i) = std::sqrt(lambda);
    } else {
      if (r == 0.0) throw Error(ErrorCode::BranchCutViolation, "logarithm of a singular operator");
      fd(i) = std::log(lambda);
    }
  }
  return z * fd.asDiagonal() * z.adjoint();
}

Matrix exp_anti_hermitian(const Matrix& x) {
  require(x, Structure::anti_hermitian, "exp_anti_hermitian input");
  // X = -i H with H = iX hermitian, so exp(X) = W exp(-i w) W^dagger.
  const Matrix h = Complex(0, 1) * x;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
  Vector phases(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    phases(i) = std::exp(Complex(0, -solver.eigenvalues()(i)));
  }
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix exp_general(const Matrix& x) {
  if (x.rows() != x.cols()) throw Error(ErrorCode::DimMismatch, "exp of a non-square matrix");
  return x.exp();
}

BlockParts block_split(const Matrix& x, const Matrix& p0) {
  if (x.rows() != x.cols() || p0.rows() != x.rows() || p0.cols() != x.cols()) {
    throw Error(ErrorCode::DimMismatch, "block_split dimensions differ");
  }
  const Matrix q0 = identity(x.rows()) - p0;
  BlockParts parts;
  parts.diag = p0 * x * p0 + q0 * x * q0;
  parts.offdiag = x - parts.diag;
  return parts;
}

Matrix block_diagonal_part(const Matrix& x, const Matrix& p0) { return block_split(x, p0).diag; }

Matrix block_off_diagonal_part(const Matrix& x, const Matrix& p0) { return block_split(x, p0).offdiag; }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace swolff
