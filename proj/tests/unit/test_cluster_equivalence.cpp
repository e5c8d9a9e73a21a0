#include "doctest.h"
#include "oracles.hpp"
#include "swolff/cluster_equivalence.hpp"
#include "swolff/random_models.hpp"

using namespace swolff;

namespace {

SpinLattice two_disjoint_edges(Rng& rng) {
  std::vector<Site> sites;
  for (int u = 0; u < 4; ++u) sites.push_back({random_site_h0(rng, 3, 2, 1.0), 2});
  return SpinLattice(sites, {{0, 1, random_hermitian(rng, 9)}, {2, 3, random_hermitian(rng, 9)}});
}

}  // namespace

TEST_CASE("mixed monomials vanish for disjoint edges") {
  Rng rng(1);
  const SpinLattice lattice = two_disjoint_edges(rng);
  for (SeriesMethod method : {SeriesMethod::global_recursion, SeriesMethod::local_sw}) {
    const EdgeMonomialSeries s = multivariate_heff(lattice, 3, method);
    for (const auto& [m, x] : s.terms.terms()) {
      if (m[0] > 0 && m[1] > 0) CHECK(operator_norm(x) < 1e-10);
    }
    CHECK(specialization_residual(lattice, s) < 1e-10);
  }
}

TEST_CASE("linked cluster report on a path") {
  Rng rng(2);
  const SpinLattice lattice = random_chain(rng, 3, 3, 2, 1.0, 1.0);
  const EdgeMonomialSeries s = multivariate_heff(lattice, 3, SeriesMethod::global_recursion);
  const LinkedClusterReport r = linked_cluster_report(lattice, s.terms);
  CHECK(r.violations == 0);
  int nonzero = 0;
  for (const MonomialCheck& c : r.monomials) {
    if (!c.nonzero) continue;
    ++nonzero;
    CHECK(c.connected);
    CHECK(site_count(c.sites) <= c.q + 1);
  }
  CHECK(nonzero > 0);
}

TEST_CASE("global and local effective Hamiltonians agree at first order") {
  Rng rng(3);
  const SpinLattice lattice = random_chain(rng, 3, 3, 2, 1.0, 1.0);
  const auto g = multivariate_heff(lattice, 2, SeriesMethod::global_recursion).terms.specialize();
  const auto l = multivariate_heff(lattice, 2, SeriesMethod::local_sw).terms.specialize();
  CHECK(operator_norm(g[1] - l[1]) < 1e-12);
  // Second order agrees in spectrum but not necessarily as an operator.
  const Matrix b = lattice.low_basis();
  const Matrix g2 = b.adjoint() * g[2] * b;
  const Matrix l2 = b.adjoint() * l[2] * b;
  CHECK(std::abs(g2.trace() - l2.trace()) < 1e-12);
}

TEST_CASE("equivalence generator") {
  Rng rng(4);
  std::vector<Matrix> s{Matrix::Zero(3, 3)};
  for (int j = 1; j <= 3; ++j) s.push_back(Complex(0, 1) * oracle::gaussian_hermitian(rng, 3));
  const SeriesCoefficients k = equivalence_generator(s, s, 3);
  for (std::size_t j = 1; j < k.coeffs.size(); ++j) CHECK(operator_norm(k.coeffs[j]) < 1e-13);

  std::vector<Matrix> t{Matrix::Zero(3, 3), Matrix::Zero(3, 3), Matrix::Zero(3, 3), Matrix::Zero(3, 3)};
  const SeriesCoefficients k2 = equivalence_generator(s, t, 3);
  CHECK(operator_norm(k2.coeffs[1] - s[1]) < 1e-13);
  CHECK(operator_norm(k2.coeffs[2] - s[2]) < 1e-13);
}

TEST_CASE("equivalence residual") {
  Rng rng(5);
  const SpinLattice lattice = random_chain(rng, 2, 3, 2, 1.0, 1.0);
  CHECK(equivalence_residual(lattice, 0.0, 2).residual < 1e-14);
  const EquivalenceResult r = equivalence_residual(lattice, 0.02, 2);
  for (double x : r.k_offdiag) CHECK(x < 1e-10);
  CHECK(r.residual < 1e-5);

  std::vector<Site> sites = lattice.sites();
  const SpinLattice bd(sites, {{0, 1, random_block_diagonal_coupling(rng, lattice, 0, 1)}});
  CHECK(equivalence_residual(bd, 0.05, 2).residual < 1e-12);
}
