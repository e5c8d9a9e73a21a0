#pragma once

#include <map>
#include <string>
#include <vector>

#include "swolff/perturbative_sw.hpp"
#include "swolff/rational.hpp"

namespace swolff {

/// Rooted tree with ordered children. Node 0 is the root and nodes are
/// numbered in preorder.
class DiagramTree {
 public:
  /// Builds the tree from its preorder child-count sequence. Throws
  /// ValidationError if the sequence does not describe a single tree.
  static DiagramTree from_encoding(const std::vector<int>& child_counts);

  int size() const { return static_cast<int>(children_.size()); }
  const std::vector<int>& children(int node) const { return children_[static_cast<std::size_t>(node)]; }
  int child_count(int node) const { return static_cast<int>(children(node).size()); }
  /// Preorder child counts.
  const std::vector<int>& encoding() const { return encoding_; }
  /// Encoding of the subtree rooted at `node`.
  std::vector<int> subtree_encoding(int node) const;

  /// Root has odd NOC; other nodes have NOC 1 or even.
  bool admissible() const;
  /// Every node has NOC 0, 1 or even.
  bool s_admissible() const;

  std::string to_string() const;

 private:
  std::vector<std::vector<int>> children_;
  std::vector<int> encoding_;
};

/// Admissible trees with n nodes in lexicographic order of encodings.
/// Throws OrderTooLarge outside 2..10.
std::vector<DiagramTree> enumerate_admissible(int n);
/// S-admissible trees with n nodes; 1 <= n <= 10.
std::vector<DiagramTree> enumerate_s_admissible(int n);

/// Product of node weights: 1 for a single child, a_k for even k, b_k at
/// the root. Throws NotAdmissible.
Rational tree_weight(const DiagramTree& t);
/// 1 for a single child or a leaf, a_k for even k. Throws NotAdmissible.
Rational s_tree_weight(const DiagramTree& t);

/// Evaluates node operators for one problem, memoizing subtrees.
class DiagramEvaluator {
 public:
  DiagramEvaluator(const SpectralSplit& split, const Matrix& v);

  /// O(T), supported on the low block.
  Matrix evaluate(const DiagramTree& t);
  /// O'(T), block-off-diagonal.
  Matrix evaluate_s(const DiagramTree& t);

 private:
  Matrix node(const DiagramTree& t, int u);
  Matrix apply_children(const DiagramTree& t, int u);

  const SpectralSplit& split_;
  Matrix vd_;
  Matrix vod_;
  Matrix s1_;
  std::map<std::vector<int>, Matrix> memo_;
};

/// Coefficient q is the weighted tree sum for q >= 2, with H0 P0 and
/// P0 V P0 at orders 0 and 1.
SeriesCoefficients heff_via_diagrams(const SpectralSplit& split, const Matrix& v, int n);
/// S_0 = 0 and S_q as a weighted sum over S-admissible trees.
SeriesCoefficients s_via_diagrams(const SpectralSplit& split, const Matrix& v, int n);

}  // namespace swolff
