#include "swolff/random_models.hpp"

#include <algorithm>
#include <vector>

#include <Eigen/QR>

namespace swolff {

Matrix random_ginibre(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix x(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) x(i, j) = Complex(normal(rng), normal(rng));
  return x;
}

Matrix random_hermitian(Rng& rng, Eigen::Index dim, double norm) {
  const Matrix g = random_ginibre(rng, dim);
  Matrix h = 0.5 * (g + g.adjoint());
  const double n = operator_norm(h);
  if (n > 0.0) h *= norm / n;
  return h;
}

Matrix random_unitary(Rng& rng, Eigen::Index dim) {
  const Matrix g = random_ginibre(rng, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

Matrix random_projector(Rng& rng, Eigen::Index dim, Eigen::Index rank) {
  const Matrix u = random_unitary(rng, dim);
  const Matrix b = u.leftCols(rank);
  return b * b.adjoint();
}

Matrix nearby_projector(Rng& rng, const Matrix& p0, double max_distance) {
  std::uniform_real_distribution<double> uniform(0.05, 1.0);
  const Matrix h = random_hermitian(rng, p0.rows());
  const Matrix a = Complex(0.0, 1.0) * h;
  for (;;) {
    const double t = uniform(rng);
    const Matrix w = exp_anti_hermitian(t * a);
    Matrix p = w * p0 * w.adjoint();
    p = 0.5 * (p + p.adjoint()).eval();
    const double d = operator_norm(p - p0);
    if (d > 0.0 && d < max_distance) return p;
  }
}

RandomModel random_gapped_model(Rng& rng, const ModelShape& shape) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> e;
  for (Eigen::Index i = 0; i < shape.rank; ++i) e.push_back(shape.low_spread * unit(rng));
  if (shape.rank > 0 && shape.low_spread > 0.0) {
    // Pin the window hull to [0, low_spread].
    e[0] = 0.0;
    if (shape.rank > 1) e[1] = shape.low_spread;
  }
  const double base = shape.gap + shape.low_spread;
  for (Eigen::Index i = shape.rank; i < shape.dim; ++i) e.push_back(base + shape.high_width * unit(rng));
  if (shape.dim > shape.rank) e[static_cast<std::size_t>(shape.rank)] = base;
  RealVector ev = Eigen::Map<RealVector>(e.data(), static_cast<Eigen::Index>(e.size()));
  const Matrix w = random_unitary(rng, shape.dim);
  RandomModel m;
  m.h0 = w * ev.cast<Complex>().asDiagonal() * w.adjoint();
  m.h0 = 0.5 * (m.h0 + m.h0.adjoint()).eval();
  m.v = random_hermitian(rng, shape.dim);
  m.window = {-shape.gap / 2.0, shape.low_spread + shape.gap / 2.0};
  return m;
}

Matrix random_site_h0(Rng& rng, Eigen::Index dim, int low_dim, double gap) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealVector e = RealVector::Zero(dim);
  for (Eigen::Index i = low_dim; i < dim; ++i) e(i) = i == low_dim ? gap : gap * (1.0 + unit(rng));
  const Matrix w = random_unitary(rng, dim);
  Matrix h = w * e.cast<Complex>().asDiagonal() * w.adjoint();
  return 0.5 * (h + h.adjoint());
}

SpinLattice random_chain(Rng& rng, int sites, Eigen::Index site_dim, int low_dim, double gap, double coupling) {
  std::vector<Site> s;
  for (int u = 0; u < sites; ++u) s.push_back({random_site_h0(rng, site_dim, low_dim, gap), low_dim});
  std::vector<Edge> e;
  for (int u = 0; u + 1 < sites; ++u) e.push_back({u, u + 1, random_hermitian(rng, site_dim * site_dim, coupling)});
  return SpinLattice(std::move(s), std::move(e));
}

Matrix random_block_diagonal_coupling(Rng& rng, const SpinLattice& lattice, int u, int v) {
  const Matrix p = kron(lattice.local_projector(std::min(u, v)), lattice.local_projector(std::max(u, v)));
  const Matrix x = random_hermitian(rng, p.rows());
  Matrix d = block_diagonal_part(x, p);
  d = 0.5 * (d + d.adjoint()).eval();
  return d / operator_norm(d);
}

}  // namespace swolff
