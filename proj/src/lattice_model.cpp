#include "swolff/lattice_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace swolff {

int site_count(SiteSet a) { return std::popcount(a); }

std::vector<int> sites_of(SiteSet a) {
  std::vector<int> out;
  for (int u = 0; a != 0; ++u, a >>= 1) {
    if (a & 1u) out.push_back(u);
  }
  return out;
}

SiteSet site_set(const std::vector<int>& sites) {
  SiteSet a = 0;
  for (int u : sites) a |= SiteSet{1} << u;
  return a;
}

TensorLayout::TensorLayout(std::vector<Eigen::Index> dims) : dims_(std::move(dims)) {
  if (dims_.size() > 32) throw Error(ErrorCode::DimensionCap, "at most 32 sites");
  for (Eigen::Index d : dims_) {
    if (d < 1) throw Error(ErrorCode::InvalidLattice, "site dimension must be positive");
  }
}

Eigen::Index TensorLayout::dim(SiteSet a) const {
  Eigen::Index d = 1;
  for (int u : sites_of(a)) {
    if (u >= num_sites()) throw Error(ErrorCode::SupportMismatch, "site " + std::to_string(u) + " out of range");
    d *= site_dim(u);
  }
  return d;
}

namespace {

// Indices of B split into the A part and the B \ A part.
struct IndexSplit {
  std::vector<Eigen::Index> ia;
  std::vector<Eigen::Index> ic;
  std::vector<Eigen::Index> inverse;  // [a * dc + c] -> index in B
  Eigen::Index da = 1;
  Eigen::Index dc = 1;
};

IndexSplit split_index(const TensorLayout& layout, SiteSet b, SiteSet a) {
  if (!is_subset(a, b)) throw Error(ErrorCode::SupportMismatch, "support is not contained in the target");
  const std::vector<int> sites = sites_of(b);
  IndexSplit s;
  s.da = layout.dim(a);
  s.dc = layout.dim(b & ~a);
  const Eigen::Index db = s.da * s.dc;
  s.ia.resize(static_cast<std::size_t>(db));
  s.ic.resize(static_cast<std::size_t>(db));
  s.inverse.resize(static_cast<std::size_t>(db));
  std::vector<Eigen::Index> digits(sites.size());
  for (Eigen::Index i = 0; i < db; ++i) {
    Eigen::Index rem = i;
    for (std::size_t k = sites.size(); k-- > 0;) {
      const Eigen::Index d = layout.site_dim(sites[k]);
      digits[k] = rem % d;
      rem /= d;
    }
    Eigen::Index ia = 0;
    Eigen::Index ic = 0;
    for (std::size_t k = 0; k < sites.size(); ++k) {
      const Eigen::Index d = layout.site_dim(sites[k]);
      if (contains_site(a, sites[k])) {
        ia = ia * d + digits[k];
      } else {
        ic = ic * d + digits[k];
      }
    }
    s.ia[static_cast<std::size_t>(i)] = ia;
    s.ic[static_cast<std::size_t>(i)] = ic;
    s.inverse[static_cast<std::size_t>(ia * s.dc + ic)] = i;
  }
  return s;
}

void check_square(const Matrix& x, Eigen::Index d, const char* what) {
  if (x.rows() != d || x.cols() != d) {
    throw Error(ErrorCode::DimMismatch, std::string(what) + ": expected dimension " + std::to_string(d) + ", got " +
                                            std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
}

}  // namespace

Matrix TensorLayout::embed(SiteSet a, const Matrix& x, SiteSet b) const {
  const IndexSplit s = split_index(*this, b, a);
  check_square(x, s.da, "embed");
  const Eigen::Index db = s.da * s.dc;
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index j = 0; j < db; ++j) {
    const Eigen::Index ja = s.ia[static_cast<std::size_t>(j)];
    const Eigen::Index c = s.ic[static_cast<std::size_t>(j)];
    for (Eigen::Index ia = 0; ia < s.da; ++ia) {
      out(s.inverse[static_cast<std::size_t>(ia * s.dc + c)], j) = x(ia, ja);
    }
  }
  return out;
}

Matrix TensorLayout::reduce(SiteSet b, const Matrix& x, SiteSet a) const {
  const IndexSplit s = split_index(*this, b, a);
  check_square(x, s.da * s.dc, "reduce");
  Matrix out = Matrix::Zero(s.da, s.da);
  const Eigen::Index db = s.da * s.dc;
  for (Eigen::Index j = 0; j < db; ++j) {
    const Eigen::Index ja = s.ia[static_cast<std::size_t>(j)];
    const Eigen::Index c = s.ic[static_cast<std::size_t>(j)];
    for (Eigen::Index ia = 0; ia < s.da; ++ia) {
      out(ia, ja) += x(s.inverse[static_cast<std::size_t>(ia * s.dc + c)], j);
    }
  }
  return out;
}

Matrix TensorLayout::expectation(SiteSet b, const Matrix& x, SiteSet a) const {
  return reduce(b, x, a) / static_cast<double>(dim(b & ~a));
}

void LocalOperator::add(SiteSet a, const Matrix& x) {
  check_square(x, layout_->dim(a), "local term");
  auto it = terms_.find(a);
  if (it == terms_.end()) {
    terms_.emplace(a, x);
  } else {
    it->second += x;
  }
}

void LocalOperator::add(const LocalOperator& o, Complex c) {
  if (!layout_) layout_ = o.layout_;
  for (const auto& [a, x] : o.terms_) add(a, c * x);
}

LocalOperator LocalOperator::scaled(Complex c) const {
  LocalOperator out = *this;
  for (auto& [a, x] : out.terms_) x *= c;
  return out;
}

LocalOperator LocalOperator::canonical() const {
  LocalOperator out(layout_);
  double reference = 1.0;
  for (const auto& [a, x] : terms_) {
    reference = std::max(reference, operator_norm(x));
    for (const auto& [sub, y] : support_decompose(layout_, x, a).terms_) out.add(sub, y);
  }
  for (auto it = out.terms_.begin(); it != out.terms_.end();) {
    if (operator_norm(it->second) <= tol::support * reference) {
      it = out.terms_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

Matrix LocalOperator::on(SiteSet b) const {
  const Eigen::Index d = layout_->dim(b);
  Matrix out = Matrix::Zero(d, d);
  for (const auto& [a, x] : terms_) out += layout_->embed(a, x, b);
  return out;
}

Matrix LocalOperator::to_full() const { return on(layout_->all()); }

int LocalOperator::locality() const {
  int k = 0;
  for (const auto& [a, x] : terms_) k = std::max(k, site_count(a));
  return k;
}

double LocalOperator::strength() const {
  double j = 0.0;
  for (int u = 0; u < layout_->num_sites(); ++u) {
    double sum = 0.0;
    for (const auto& [a, x] : terms_) {
      if (contains_site(a, u)) sum += operator_norm(x);
    }
    j = std::max(j, sum);
  }
  return j;
}

double LocalOperator::strength_touching(SiteSet m) const {
  double sum = 0.0;
  for (const auto& [a, x] : terms_) {
    if (a & m) sum += operator_norm(x);
  }
  return sum;
}

LocalOperator support_decompose(const std::shared_ptr<const TensorLayout>& layout, const Matrix& x, SiteSet b) {
  const TensorLayout& l = *layout;
  check_square(x, l.dim(b), "support_decompose");
  // Conditional expectations for every subset of b, each obtained from a
  // superset with one more site by a single partial trace.
  std::map<SiteSet, Matrix> expect;
  expect.emplace(b, x);
  std::vector<SiteSet> subsets;
  for (SiteSet a = b;; a = (a - 1) & b) {
    subsets.push_back(a);
    if (a == 0) break;
  }
  std::sort(subsets.begin(), subsets.end(),
            [](SiteSet p, SiteSet q) { return site_count(p) != site_count(q) ? site_count(p) > site_count(q) : p < q; });
  for (SiteSet a : subsets) {
    if (a == b) continue;
    const SiteSet rest = b & ~a;
    const SiteSet parent = a | (rest & (~rest + 1));
    expect.emplace(a, l.expectation(parent, expect.at(parent), a));
  }
  LocalOperator out(layout);
  const double cutoff = tol::support * scale(x);
  for (SiteSet a : subsets) {
    Matrix xa = Matrix::Zero(l.dim(a), l.dim(a));
    for (SiteSet c = a;; c = (c - 1) & a) {
      const double sign = (site_count(a) - site_count(c)) % 2 == 0 ? 1.0 : -1.0;
      xa += sign * l.embed(c, expect.at(c), a);
      if (c == 0) break;
    }
    if (operator_norm(xa) > cutoff) out.add(a, xa);
  }
  return out;
}

LocalOperator support_decompose(const std::shared_ptr<const TensorLayout>& layout, const Matrix& x) {
  return support_decompose(layout, x, layout->all());
}

LocalOperator local_commutator(const LocalOperator& x, const LocalOperator& y) {
  const auto& layout = x.layout_ptr() ? x.layout_ptr() : y.layout_ptr();
  LocalOperator raw(layout);
  for (const auto& [a, xa] : x.terms()) {
    for (const auto& [b, yb] : y.terms()) {
      if ((a & b) == 0) continue;
      const SiteSet u = a | b;
      const Matrix ex = layout->embed(a, xa, u);
      const Matrix ey = layout->embed(b, yb, u);
      raw.add(u, ex * ey - ey * ex);
    }
  }
  return raw.canonical();
}

namespace {

// Exchanges the two tensor factors of an operator on d1 x d2.
Matrix swap_factors(const Matrix& x, Eigen::Index d1, Eigen::Index d2) {
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index i1 = 0; i1 < d1; ++i1)
    for (Eigen::Index i2 = 0; i2 < d2; ++i2)
      for (Eigen::Index j1 = 0; j1 < d1; ++j1)
        for (Eigen::Index j2 = 0; j2 < d2; ++j2) out(i2 * d1 + i1, j2 * d1 + j1) = x(i1 * d2 + i2, j1 * d2 + j2);
  return out;
}

}  // namespace

SpinLattice::SpinLattice(std::vector<Site> sites, std::vector<Edge> edges)
    : sites_(std::move(sites)), edges_(std::move(edges)) {
  if (sites_.empty()) throw Error(ErrorCode::InvalidLattice, "lattice has no sites");
  if (edges_.size() > 64) throw Error(ErrorCode::InvalidLattice, "at most 64 edges");
  std::vector<Eigen::Index> dims, low_dims;
  double total = 1.0;
  gap_ = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < sites_.size(); ++u) {
    const Site& s = sites_[u];
    const std::string name = "site " + std::to_string(u) + " h0";
    if (s.h0.rows() != s.h0.cols() || s.h0.rows() < 1) throw Error(ErrorCode::DimMismatch, name + " is not square");
    require(s.h0, Structure::hermitian, name);
    const Eigen::Index d = s.h0.rows();
    if (s.low_dim < 1 || s.low_dim > d) {
      throw Error(ErrorCode::InvalidLattice, "site " + std::to_string(u) + " low_dim outside [1, dim]");
    }
    const EigenSystem eig = spectral_decompose(s.h0);
    const double t = tol::window * std::max(1.0, operator_norm(s.h0));
    for (int k = 0; k < s.low_dim; ++k) {
      if (std::abs(eig.values(k)) > t) {
        throw Error(ErrorCode::InvalidLattice,
                    "site " + std::to_string(u) + " ground energy is not 0 with multiplicity low_dim");
      }
    }
    if (s.low_dim < d) {
      const double local_gap = eig.values(s.low_dim);
      if (local_gap <= t) {
        throw Error(ErrorCode::InvalidLattice,
                    "site " + std::to_string(u) + " ground multiplicity exceeds low_dim");
      }
      gap_ = std::min(gap_, local_gap);
    }
    Matrix basis = eig.vectors.leftCols(s.low_dim);
    local_p0_.push_back(basis * basis.adjoint());
    local_basis_.push_back(std::move(basis));
    dims.push_back(d);
    low_dims.push_back(s.low_dim);
    total *= static_cast<double>(d);
  }
  if (total > static_cast<double>(max_total_dim)) {
    throw Error(ErrorCode::DimensionCap, "total dimension above " + std::to_string(max_total_dim));
  }
  layout_ = std::make_shared<const TensorLayout>(dims);
  low_layout_ = std::make_shared<const TensorLayout>(low_dims);

  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    Edge& edge = edges_[e];
    const std::string name = "edge " + std::to_string(e) + " V";
    const int n = num_sites();
    if (edge.u < 0 || edge.v < 0 || edge.u >= n || edge.v >= n || edge.u == edge.v) {
      throw Error(ErrorCode::InvalidLattice, "edge " + std::to_string(e) + " has invalid endpoints");
    }
    const Eigen::Index du = dims[static_cast<std::size_t>(edge.u)];
    const Eigen::Index dv = dims[static_cast<std::size_t>(edge.v)];
    check_square(edge.coupling, du * dv, name.c_str());
    require(edge.coupling, Structure::hermitian, name);
    if (edge.u > edge.v) {
      edge.coupling = swap_factors(edge.coupling, du, dv);
      std::swap(edge.u, edge.v);
    }
    if (!seen.emplace(edge.u, edge.v).second) {
      throw Error(ErrorCode::InvalidLattice, "duplicate edge " + std::to_string(edge.u) + "-" + std::to_string(edge.v));
    }
  }
}

int SpinLattice::max_degree() const {
  std::vector<int> degree(static_cast<std::size_t>(num_sites()), 0);
  for (const Edge& e : edges_) {
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }
  return *std::max_element(degree.begin(), degree.end());
}

double SpinLattice::h0_ratio() const {
  double r = 0.0;
  for (const Site& s : sites_) r = std::max(r, operator_norm(s.h0) / gap_);
  return r;
}

Matrix SpinLattice::projector_on(SiteSet a) const {
  Matrix out = identity(1);
  for (int u : sites_of(a)) out = kron(out, local_projector(u));
  return out;
}

Matrix SpinLattice::h0_on(SiteSet a) const {
  const Eigen::Index d = layout_->dim(a);
  Matrix out = Matrix::Zero(d, d);
  for (int u : sites_of(a)) out += layout_->embed(SiteSet{1} << u, sites_[static_cast<std::size_t>(u)].h0, a);
  return out;
}

Matrix SpinLattice::low_basis() const {
  Matrix out = identity(1);
  for (int u = 0; u < num_sites(); ++u) out = kron(out, local_low_basis(u));
  return out;
}

Matrix SpinLattice::h0() const { return h0_on(layout_->all()); }

Matrix SpinLattice::edge_operator(int e) const {
  const Edge& edge = edges_[static_cast<std::size_t>(e)];
  return layout_->embed(site_set({edge.u, edge.v}), edge.coupling);
}

Matrix SpinLattice::v() const {
  Matrix out = Matrix::Zero(dim(), dim());
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) out += edge_operator(e);
  return out;
}

LocalOperator SpinLattice::h0_local() const {
  LocalOperator out(layout_);
  for (int u = 0; u < num_sites(); ++u) out.add(SiteSet{1} << u, sites_[static_cast<std::size_t>(u)].h0);
  return out;
}

LocalOperator SpinLattice::edge_local(int e) const {
  const Edge& edge = edges_[static_cast<std::size_t>(e)];
  LocalOperator out(layout_);
  out.add(site_set({edge.u, edge.v}), edge.coupling);
  return out;
}

LocalOperator SpinLattice::v_by_edge() const {
  LocalOperator out(layout_);
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) out.add(edge_local(e));
  return out;
}

SpectralSplit SpinLattice::split() const {
  const double half = std::isinf(gap_) ? 1.0 : gap_ / 2.0;
  return make_split(h0(), {-half, half});
}

SiteSet edge_sites(const SpinLattice& lattice, std::uint64_t mask) {
  SiteSet s = 0;
  for (std::size_t e = 0; e < lattice.edges().size(); ++e) {
    if ((mask >> e) & 1u) s |= site_set({lattice.edges()[e].u, lattice.edges()[e].v});
  }
  return s;
}

bool edges_connected(const SpinLattice& lattice, std::uint64_t mask) {
  if (mask == 0) return false;
  const auto& edges = lattice.edges();
  const int first = std::countr_zero(mask);
  SiteSet reached = site_set({edges[static_cast<std::size_t>(first)].u, edges[static_cast<std::size_t>(first)].v});
  std::uint64_t used = std::uint64_t{1} << first;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::uint64_t bit = std::uint64_t{1} << e;
      if (!(mask & bit) || (used & bit)) continue;
      const SiteSet s = site_set({edges[e].u, edges[e].v});
      if (s & reached) {
        reached |= s;
        used |= bit;
        grew = true;
      }
    }
  }
  return used == mask;
}

std::vector<Cluster> connected_clusters(const SpinLattice& lattice, int max_edges, std::size_t cap) {
  const auto& edges = lattice.edges();
  std::set<std::uint64_t> current;
  for (std::size_t e = 0; e < edges.size(); ++e) current.insert(std::uint64_t{1} << e);
  std::vector<std::uint64_t> all;
  for (int size = 1; size <= max_edges && !current.empty(); ++size) {
    all.insert(all.end(), current.begin(), current.end());
    if (all.size() > cap) throw Error(ErrorCode::TooManyClusters, "more than " + std::to_string(cap) + " clusters");
    std::set<std::uint64_t> next;
    if (size < max_edges) {
      for (std::uint64_t mask : current) {
        const SiteSet sites = edge_sites(lattice, mask);
        for (std::size_t e = 0; e < edges.size(); ++e) {
          const std::uint64_t bit = std::uint64_t{1} << e;
          if (mask & bit) continue;
          if (site_set({edges[e].u, edges[e].v}) & sites) next.insert(mask | bit);
        }
      }
    }
    current = std::move(next);
  }
  std::vector<Cluster> out;
  for (std::uint64_t mask : all) {
    Cluster c;
    c.edge_mask = mask;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if ((mask >> e) & 1u) c.edges.push_back(static_cast<int>(e));
    }
    c.sites = edge_sites(lattice, mask);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace swolff
