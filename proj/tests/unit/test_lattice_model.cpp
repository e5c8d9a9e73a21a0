#include "doctest.h"
#include "oracles.hpp"
#include "swolff/lattice_model.hpp"
#include "swolff/random_models.hpp"

using namespace swolff;

namespace {

Matrix qubit_h0() {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = 1;
  return h;
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

TEST_CASE("site sets") {
  CHECK(site_count(site_set({0, 2, 5})) == 3);
  CHECK(sites_of(site_set({3, 1})) == std::vector<int>{1, 3});
  CHECK(is_subset(site_set({1}), site_set({0, 1})));
  CHECK_FALSE(contains_site(site_set({0, 1}), 2));
}

TEST_CASE("embedding matches an explicit index construction") {
  std::mt19937_64 rng(2);
  const std::vector<Eigen::Index> dims{2, 3, 2};
  const TensorLayout layout(dims);
  CHECK(layout.total_dim() == 12);
  for (auto [u, v] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const Matrix x = oracle::gaussian_hermitian(rng, dims[static_cast<std::size_t>(u)] * dims[static_cast<std::size_t>(v)]);
    CHECK(operator_norm(layout.embed(site_set({u, v}), x) - oracle::embed_pair(dims, u, v, x)) < 1e-14);
  }
}

TEST_CASE("partial trace inverts embedding") {
  std::mt19937_64 rng(4);
  const TensorLayout layout({2, 3, 2});
  const Matrix x = oracle::gaussian_hermitian(rng, 6);
  const SiteSet a = site_set({0, 1});
  const Matrix full = layout.embed(a, x);
  CHECK(operator_norm(layout.expectation(layout.all(), full, a) - x) < 1e-13);
  CHECK(operator_norm(layout.reduce(layout.all(), full, a) - 2.0 * x) < 1e-13);
}

TEST_CASE("support decomposition reconstructs and is traceless on each site") {
  std::mt19937_64 rng(6);
  auto layout = std::make_shared<const TensorLayout>(std::vector<Eigen::Index>{2, 2, 3});
  const Matrix x = oracle::gaussian_hermitian(rng, 12);
  const LocalOperator dec = support_decompose(layout, x);
  CHECK(operator_norm(dec.to_full() - x) < 1e-12);
  for (const auto& [a, term] : dec.terms()) {
    for (int u : sites_of(a)) {
      const SiteSet rest = a & ~(SiteSet{1} << u);
      CHECK(operator_norm(layout->reduce(a, term, rest)) < 1e-12);
    }
  }
  // A single two-site product of traceless factors has one component.
  const Matrix y = layout->embed(site_set({0, 2}), kron(pauli_x(), Matrix(oracle::gaussian_hermitian(rng, 3) -
                                                                           Matrix::Identity(3, 3) * 100.0)));
  const LocalOperator dy = support_decompose(layout, y);
  CHECK(dy.locality() <= 2);
  CHECK(operator_norm(dy.to_full() - y) < 1e-11);
}

TEST_CASE("local commutator equals the dense commutator") {
  Rng rng(8);
  const SpinLattice lattice = random_chain(rng, 4, 2, 1, 1.0, 1.0);
  const LocalOperator v = lattice.v_by_edge();
  const LocalOperator h = lattice.h0_local();
  const LocalOperator c = local_commutator(v, h);
  CHECK(operator_norm(c.to_full() - commutator(lattice.v(), lattice.h0())) < 1e-12);
  CHECK(c.locality() <= 2);
}

TEST_CASE("interaction strength") {
  auto layout = std::make_shared<const TensorLayout>(std::vector<Eigen::Index>{2, 2, 2});
  LocalOperator x(layout);
  x.add(site_set({0, 1}), 0.5 * kron(pauli_z(), pauli_z()));
  x.add(site_set({1, 2}), 0.25 * kron(pauli_x(), pauli_x()));
  CHECK(x.strength() == doctest::Approx(0.75));
  CHECK(x.strength_touching(site_set({2})) == doctest::Approx(0.25));
}

TEST_CASE("lattice validation") {
  const Site s{qubit_h0(), 1};
  const Matrix zz = kron(pauli_z(), pauli_z());
  CHECK(code_of([&] { SpinLattice({s, s}, {{0, 1, zz}, {1, 0, zz}}); }) == ErrorCode::InvalidLattice);
  Matrix shifted = qubit_h0() + identity(2);
  CHECK(code_of([&] { SpinLattice({Site{shifted, 1}, s}, {}); }) == ErrorCode::InvalidLattice);
  CHECK(code_of([&] { SpinLattice({s, s}, {{0, 2, zz}}); }) == ErrorCode::InvalidLattice);
  std::vector<Site> many(13, s);
  CHECK(code_of([&] { SpinLattice(many, {}); }) == ErrorCode::DimensionCap);
}

TEST_CASE("edge orientation is normalized") {
  Rng rng(10);
  const Matrix x = random_hermitian(rng, 6);
  const Site a{random_site_h0(rng, 2, 1, 1.0), 1};
  const Site b{random_site_h0(rng, 3, 1, 1.0), 1};
  const SpinLattice forward({a, b}, {{0, 1, x}});
  // The same physical coupling written with the site order swapped.
  Matrix swapped(6, 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 3; ++l) swapped(j * 2 + i, l * 2 + k) = x(i * 3 + j, k * 3 + l);
  const SpinLattice backward({a, b}, {{1, 0, swapped}});
  CHECK(operator_norm(forward.v() - backward.v()) < 1e-14);
}

TEST_CASE("low basis and projectors") {
  Rng rng(12);
  const SpinLattice lattice = random_chain(rng, 3, 3, 2, 1.0, 1.0);
  const Matrix b = lattice.low_basis();
  CHECK(b.cols() == 8);
  const Matrix expected =
      kron(kron(lattice.local_low_basis(0), lattice.local_low_basis(1)), lattice.local_low_basis(2));
  CHECK(operator_norm(b - expected) < 1e-14);
  const SpectralSplit s = lattice.split();
  CHECK(operator_norm(s.p0 - b * b.adjoint()) < 1e-10);
  CHECK(s.gap == doctest::Approx(lattice.gap()));
}

TEST_CASE("connected clusters") {
  Rng rng(14);
  const SpinLattice path = random_chain(rng, 4, 2, 1, 1.0, 1.0);
  const auto clusters = connected_clusters(path, 3);
  CHECK(clusters.size() == 6);
  CHECK(clusters.back().edges.size() == 3);
  const Site s{qubit_h0(), 1};
  const Matrix zz = kron(pauli_z(), pauli_z());
  const SpinLattice disjoint({s, s, s, s}, {{0, 1, zz}, {2, 3, zz}});
  CHECK(connected_clusters(disjoint, 2).size() == 2);
  CHECK_FALSE(edges_connected(disjoint, 3));
  CHECK(edge_sites(disjoint, 3) == site_set({0, 1, 2, 3}));
}
