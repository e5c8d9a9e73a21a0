#include "swolff/diagrams.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace swolff {

namespace {

constexpr int max_nodes = 10;

bool allowed_inner(int k) { return k == 0 || k == 1 || k % 2 == 0; }

}  // namespace

DiagramTree DiagramTree::from_encoding(const std::vector<int>& child_counts) {
  DiagramTree t;
  if (child_counts.empty()) throw Error(ErrorCode::ValidationError, "empty tree encoding");
  t.encoding_ = child_counts;
  t.children_.resize(child_counts.size());
  // Stack of (node, remaining child slots).
  std::vector<std::pair<int, int>> open;
  for (std::size_t i = 0; i < child_counts.size(); ++i) {
    const int node = static_cast<int>(i);
    if (child_counts[i] < 0) throw Error(ErrorCode::ValidationError, "negative child count");
    if (i > 0) {
      if (open.empty()) throw Error(ErrorCode::ValidationError, "encoding describes a forest");
      t.children_[static_cast<std::size_t>(open.back().first)].push_back(node);
      if (--open.back().second == 0) open.pop_back();
    }
    if (child_counts[i] > 0) open.emplace_back(node, child_counts[i]);
  }
  if (!open.empty()) throw Error(ErrorCode::ValidationError, "encoding is missing nodes");
  return t;
}

std::vector<int> DiagramTree::subtree_encoding(int node) const {
  std::vector<int> out;
  std::vector<int> stack{node};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    out.push_back(child_count(u));
    const auto& ch = children(u);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

bool DiagramTree::admissible() const {
  if (child_count(0) % 2 != 1) return false;
  for (int u = 1; u < size(); ++u) {
    if (!allowed_inner(child_count(u))) return false;
  }
  return true;
}

bool DiagramTree::s_admissible() const {
  for (int u = 0; u < size(); ++u) {
    if (!allowed_inner(child_count(u))) return false;
  }
  return true;
}

std::string DiagramTree::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < encoding_.size(); ++i) os << (i ? "," : "") << encoding_[i];
  os << ']';
  return os.str();
}

namespace {

// Preorder child-count sequences of ordered trees with `n` nodes whose
// counts pass `ok(node_index, count)`, in lexicographic order.
std::vector<std::vector<int>> sequences(int n, const std::function<bool(int, int)>& ok) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // `open` is the number of child slots still to be filled.
  std::function<void(int)> rec = [&](int open) {
    const int placed = static_cast<int>(cur.size());
    const int left = n - placed;
    if (left == 0) {
      if (open == 0) out.push_back(cur);
      return;
    }
    if (placed > 0 && open == 0) return;
    for (int k = 0; k < left; ++k) {
      if (!ok(placed, k)) continue;
      const int next_open = (placed == 0 ? 0 : open - 1) + k;
      if (next_open > left - 1) break;
      cur.push_back(k);
      rec(next_open);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

void check_order(int n, int lo) {
  if (n < lo || n > max_nodes) {
    throw Error(ErrorCode::OrderTooLarge, "tree size " + std::to_string(n) + " outside [" + std::to_string(lo) +
                                              ", " + std::to_string(max_nodes) + "]");
  }
}

}  // namespace

std::vector<DiagramTree> enumerate_admissible(int n) {
  check_order(n, 2);
  std::vector<DiagramTree> out;
  for (const auto& seq : sequences(n, [](int i, int k) { return i == 0 ? k % 2 == 1 : allowed_inner(k); })) {
    out.push_back(DiagramTree::from_encoding(seq));
  }
  return out;
}

std::vector<DiagramTree> enumerate_s_admissible(int n) {
  check_order(n, 1);
  std::vector<DiagramTree> out;
  for (const auto& seq : sequences(n, [](int, int k) { return allowed_inner(k); })) {
    out.push_back(DiagramTree::from_encoding(seq));
  }
  return out;
}

Rational tree_weight(const DiagramTree& t) {
  if (!t.admissible()) throw Error(ErrorCode::NotAdmissible, "tree " + t.to_string() + " is not admissible");
  const CoefficientTable table(std::max(1, t.size() - 1));
  Rational w = table.b(t.child_count(0));
  for (int u = 1; u < t.size(); ++u) {
    const int k = t.child_count(u);
    if (k >= 2) w *= table.a(k);
  }
  return w;
}

Rational s_tree_weight(const DiagramTree& t) {
  if (!t.s_admissible()) throw Error(ErrorCode::NotAdmissible, "tree " + t.to_string() + " is not S-admissible");
  const CoefficientTable table(std::max(1, t.size() - 1));
  Rational w = 1;
  for (int u = 0; u < t.size(); ++u) {
    const int k = t.child_count(u);
    if (k >= 2) w *= table.a(k);
  }
  return w;
}

DiagramEvaluator::DiagramEvaluator(const SpectralSplit& split, const Matrix& v) : split_(split) {
  BlockParts parts = block_split(v, split.p0);
  vd_ = std::move(parts.diag);
  vod_ = std::move(parts.offdiag);
  s1_ = superop_L(split, vod_);
}

Matrix DiagramEvaluator::apply_children(const DiagramTree& t, int u) {
  // Ad of the first child is outermost.
  const auto& ch = t.children(u);
  Matrix x = vod_;
  for (auto it = ch.rbegin(); it != ch.rend(); ++it) x = commutator(node(t, *it), x);
  return x;
}

Matrix DiagramEvaluator::node(const DiagramTree& t, int u) {
  std::vector<int> key = t.subtree_encoding(u);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const int k = t.child_count(u);
  Matrix out;
  if (k == 0) {
    out = s1_;
  } else if (k == 1) {
    out = -superop_L(split_, commutator(vd_, node(t, t.children(u)[0])));
  } else if (k % 2 == 0) {
    out = superop_L(split_, apply_children(t, u));
  } else {
    throw Error(ErrorCode::NotAdmissible, "inner node with odd child count " + std::to_string(k));
  }
  memo_.emplace(std::move(key), out);
  return out;
}

Matrix DiagramEvaluator::evaluate(const DiagramTree& t) {
  if (!t.admissible()) throw Error(ErrorCode::NotAdmissible, "tree " + t.to_string() + " is not admissible");
  const Matrix& p0 = split_.p0;
  return p0 * apply_children(t, 0) * p0;
}

Matrix DiagramEvaluator::evaluate_s(const DiagramTree& t) {
  if (!t.s_admissible()) throw Error(ErrorCode::NotAdmissible, "tree " + t.to_string() + " is not S-admissible");
  return node(t, 0);
}

SeriesCoefficients heff_via_diagrams(const SpectralSplit& split, const Matrix& v, int n) {
  check_order(n, 1);
  DiagramEvaluator ev(split, v);
  const Matrix& p0 = split.p0;
  SeriesCoefficients out;
  out.tag = SeriesCoefficients::BlockTag::low_block;
  out.coeffs.push_back(p0 * split.h0 * p0);
  out.coeffs.push_back(p0 * v * p0);
  for (int q = 2; q <= n; ++q) {
    Matrix acc = Matrix::Zero(split.dim(), split.dim());
    for (const DiagramTree& t : enumerate_admissible(q)) acc += to_double(tree_weight(t)) * ev.evaluate(t);
    out.coeffs.push_back(std::move(acc));
  }
  return out;
}

SeriesCoefficients s_via_diagrams(const SpectralSplit& split, const Matrix& v, int n) {
  check_order(n, 1);
  DiagramEvaluator ev(split, v);
  SeriesCoefficients out;
  out.tag = SeriesCoefficients::BlockTag::off_diagonal;
  out.coeffs.push_back(Matrix::Zero(split.dim(), split.dim()));
  for (int q = 1; q <= n; ++q) {
    Matrix acc = Matrix::Zero(split.dim(), split.dim());
    for (const DiagramTree& t : enumerate_s_admissible(q)) acc += to_double(s_tree_weight(t)) * ev.evaluate_s(t);
    out.coeffs.push_back(std::move(acc));
  }
  return out;
}

}  // namespace swolff
