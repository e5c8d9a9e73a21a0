#pragma once

// Spin lattices, tensor-product bookkeeping and operator support.
//
// Tensor ordering is site-major: site 0 is the slowest index. An operator
// "on A" acts on the sites of A in ascending order with the same
// convention.

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "swolff/exact_sw.hpp"

namespace swolff {

using SiteSet = std::uint32_t;

inline constexpr Eigen::Index max_total_dim = 4096;
inline constexpr std::size_t max_clusters = 100000;

inline bool contains_site(SiteSet a, int u) { return (a >> u) & 1u; }
inline bool is_subset(SiteSet a, SiteSet b) { return (a & ~b) == 0; }
int site_count(SiteSet a);
std::vector<int> sites_of(SiteSet a);
SiteSet site_set(const std::vector<int>& sites);

/// Local dimensions only.
class TensorLayout {
 public:
  TensorLayout() = default;
  explicit TensorLayout(std::vector<Eigen::Index> dims);

  int num_sites() const { return static_cast<int>(dims_.size()); }
  Eigen::Index site_dim(int u) const { return dims_[static_cast<std::size_t>(u)]; }
  Eigen::Index dim(SiteSet a) const;
  Eigen::Index total_dim() const { return dim(all()); }
  SiteSet all() const { return num_sites() == 32 ? ~SiteSet{0} : (SiteSet{1} << num_sites()) - 1; }

  /// X on A as an operator on B (A subset of B), identity elsewhere.
  Matrix embed(SiteSet a, const Matrix& x, SiteSet b) const;
  Matrix embed(SiteSet a, const Matrix& x) const { return embed(a, x, all()); }
  /// Partial trace of X on B over B \ A.
  Matrix reduce(SiteSet b, const Matrix& x, SiteSet a) const;
  /// E_A(X) = Tr_{B\A}(X) / d_{B\A} as an operator on A.
  Matrix expectation(SiteSet b, const Matrix& x, SiteSet a) const;

 private:
  std::vector<Eigen::Index> dims_;
};

/// Sum of terms, each an operator on the sites of its key.
class LocalOperator {
 public:
  using Terms = std::map<SiteSet, Matrix>;

  LocalOperator() = default;
  explicit LocalOperator(std::shared_ptr<const TensorLayout> layout) : layout_(std::move(layout)) {}

  const TensorLayout& layout() const { return *layout_; }
  const std::shared_ptr<const TensorLayout>& layout_ptr() const { return layout_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(SiteSet a, const Matrix& x);
  void add(const LocalOperator& o, Complex c = 1.0);
  LocalOperator scaled(Complex c) const;

  /// Re-expressed with exact supports; components at or below
  /// tol::support * scale are dropped.
  LocalOperator canonical() const;
  Matrix to_full() const;
  Matrix on(SiteSet b) const;

  /// Largest |A| among the terms.
  int locality() const;
  /// max_u sum_{A containing u} ||X_A||.
  double strength() const;
  /// sum over A meeting M of ||X_A||.
  double strength_touching(SiteSet m) const;

 private:
  std::shared_ptr<const TensorLayout> layout_;
  Terms terms_;
};

/// X_A = sum_{B in A} (-1)^{|A|-|B|} E_B(X) for X on `b`.
LocalOperator support_decompose(const std::shared_ptr<const TensorLayout>& layout, const Matrix& x, SiteSet b);
LocalOperator support_decompose(const std::shared_ptr<const TensorLayout>& layout, const Matrix& x);

/// Term-pairwise [X, Y] on the union of overlapping supports.
LocalOperator local_commutator(const LocalOperator& x, const LocalOperator& y);

struct Site {
  Matrix h0;
  int low_dim = 1;
};

struct Edge {
  int u = 0;
  int v = 0;
  Matrix coupling;  // on {u, v}, u < v
};

struct Cluster {
  std::vector<int> edges;
  std::uint64_t edge_mask = 0;
  SiteSet sites = 0;
};

class SpinLattice {
 public:
  /// Throws InvalidLattice, NotHermitian, DimMismatch or DimensionCap.
  SpinLattice(std::vector<Site> sites, std::vector<Edge> edges);

  int num_sites() const { return layout_->num_sites(); }
  const TensorLayout& layout() const { return *layout_; }
  const std::shared_ptr<const TensorLayout>& layout_ptr() const { return layout_; }
  /// Local dimensions low_dim, for operators compressed to the low space.
  const std::shared_ptr<const TensorLayout>& low_layout_ptr() const { return low_layout_; }
  const std::vector<Site>& sites() const { return sites_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Eigen::Index dim() const { return layout_->total_dim(); }
  double gap() const { return gap_; }
  int max_degree() const;
  /// max_u ||h0_u|| / gap.
  double h0_ratio() const;

  /// P_{0,u} and its low basis.
  const Matrix& local_projector(int u) const { return local_p0_[static_cast<std::size_t>(u)]; }
  const Matrix& local_low_basis(int u) const { return local_basis_[static_cast<std::size_t>(u)]; }
  /// prod_{u in A} P_{0,u} on A.
  Matrix projector_on(SiteSet a) const;
  /// sum_{u in A} H_{0,u} on A.
  Matrix h0_on(SiteSet a) const;
  /// Tensor product of local low bases for the whole lattice.
  Matrix low_basis() const;

  Matrix h0() const;
  Matrix v() const;
  Matrix edge_operator(int e) const;
  LocalOperator h0_local() const;
  /// One term per edge, keyed by its two sites.
  LocalOperator v_by_edge() const;
  LocalOperator edge_local(int e) const;

  /// Split of the full H0 with window [-gap/2, gap/2].
  SpectralSplit split() const;

 private:
  std::vector<Site> sites_;
  std::vector<Edge> edges_;
  std::shared_ptr<const TensorLayout> layout_;
  std::shared_ptr<const TensorLayout> low_layout_;
  std::vector<Matrix> local_p0_;
  std::vector<Matrix> local_basis_;
  double gap_ = 0.0;
};

/// Connected edge subsets with 1 <= |C| <= max_edges, ordered by size and
/// then by edge mask. Throws TooManyClusters.
std::vector<Cluster> connected_clusters(const SpinLattice& lattice, int max_edges,
                                        std::size_t cap = max_clusters);

/// Whether the edges in `mask` form a connected graph.
bool edges_connected(const SpinLattice& lattice, std::uint64_t mask);
SiteSet edge_sites(const SpinLattice& lattice, std::uint64_t mask);

}  // namespace swolff
