#include "swolff/direct_rotation.hpp"

#include <cmath>
#include <string>

namespace swolff {

RotationPair::RotationPair(Matrix from, Matrix to) : from_(std::move(from)), to_(std::move(to)) {
  if (from_.rows() != to_.rows() || from_.cols() != to_.cols()) {
    throw Error(ErrorCode::DimMismatch, "rotation pair projectors have different dimensions");
  }
  require(from_, Structure::projector, "P");
  require(to_, Structure::projector, "P0");
  // Integer ranks: a trace difference of one or more means unequal rank.
  if (std::abs(from_.trace().real() - to_.trace().real()) >= 0.5) {
    throw Error(ErrorCode::SubspacesTooFar, "projectors have different rank");
  }
  distance_ = operator_norm(from_ - to_);
  if (distance_ >= 1.0 - tol::branch) {
    throw Error(ErrorCode::SubspacesTooFar, "||P - P0|| = " + std::to_string(distance_));
  }
}

Matrix reflection(const Matrix& p) {
  require(p, Structure::projector, "P");
  return 2.0 * p - identity(p.rows());
}

Matrix direct_rotation(const RotationPair& pair) {
  return principal_sqrt(reflection(pair.to()) * reflection(pair.from()));
}

Matrix rotation_generator(const RotationPair& pair) {
  Matrix s = principal_log(direct_rotation(pair));
  // Remove the rounding-level hermitian part.
  return 0.5 * (s - s.adjoint());
}

double generator_block_residual(const RotationPair& pair, const Matrix& s) {
  const Matrix id = identity(s.rows());
  const Matrix& p = pair.from();
  const Matrix& p0 = pair.to();
  const Matrix q = id - p;
  const Matrix q0 = id - p0;
  return std::max({operator_norm(p0 * s * p0), operator_norm(q0 * s * q0), operator_norm(p * s * p),
                   operator_norm(q * s * q)});
}

double weak_multiplicativity_residual(const Matrix& pa, const Matrix& pa0, const Matrix& pb,
                                      const Matrix& pb0) {
  const RotationPair a(pa, pa0);
  const RotationPair b(pb, pb0);
  const Matrix pab = kron(pa, pb);
  const RotationPair ab(pab, kron(pa0, pb0));
  const Matrix uab = direct_rotation(ab);
  const Matrix ua_ub = kron(direct_rotation(a), direct_rotation(b));
  return operator_norm(uab * pab - ua_ub * pab);
}

}  // namespace swolff
