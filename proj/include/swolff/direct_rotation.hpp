#pragma once

#include "swolff/operator_core.hpp"

namespace swolff {

/// A pair of equal-rank projectors closer than 1 in operator norm. The
/// rotation always maps `from` onto `to`.
class RotationPair {
 public:
  /// Throws NotProjector, DimMismatch or SubspacesTooFar.
  RotationPair(Matrix from, Matrix to);

  const Matrix& from() const { return from_; }
  const Matrix& to() const { return to_; }
  double distance() const { return distance_; }

 private:
  Matrix from_;
  Matrix to_;
  double distance_ = 0.0;
};

/// R_P = 2P - I.
Matrix reflection(const Matrix& p);

/// U = sqrt(R_to R_from), the direct rotation with U from U^dagger = to.
Matrix direct_rotation(const RotationPair& pair);

/// The anti-hermitian generator S = log U; block-off-diagonal with respect
/// to both projectors and ||S|| < pi/2.
Matrix rotation_generator(const RotationPair& pair);

/// Largest of ||P0 S P0||, ||Q0 S Q0||, ||P S P||, ||Q S Q||.
double generator_block_residual(const RotationPair& pair, const Matrix& s);

/// ||U^{AB}(P^A x P^B) - (U^A x U^B)(P^A x P^B)|| for the rotations
/// P^A -> P^A_0, P^B -> P^B_0 and their tensor product.
double weak_multiplicativity_residual(const Matrix& pa, const Matrix& pa0, const Matrix& pb,
                                      const Matrix& pb0);

}  // namespace swolff
