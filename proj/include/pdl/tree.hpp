#ifndef PDL_TREE_HPP
#define PDL_TREE_HPP

#include <functional>
#include <vector>

#include "pdl/rng.hpp"

namespace pdl {

// Rooted tree with labelled leaves (0-based) and signed internal vertices.
// Cotrees, decomposition trees and the binary limit marginals all use it.
struct SignedLeafTree {
  struct Node {
    int parent = -1;
    std::vector<int> children;
    int leaf = -1;  // label, or -1 for internal vertices
    int sign = +1;  // +1 for the plus sign, -1 for minus
    int depth = 0;
  };

  std::vector<Node> nodes;
  int root = -1;
  bool plane = false;
  std::vector<int> leaf_node;  // label -> node index, filled by finalize()

  int add_leaf(int label);
  int add_internal(int sign, std::vector<int> children);

  // Sets depths and leaf_node; throws if labels are not exactly 0..k-1.
  void finalize();

  int num_leaves() const { return static_cast<int>(leaf_node.size()); }
  int lca(int u, int v) const;
  int leaf_lca_sign(int a, int b) const { return nodes[lca(leaf_node[a], leaf_node[b])].sign; }
  // every non-root internal vertex has the opposite sign of its parent, degree >= 2
  bool is_alternating() const;
  std::vector<int> leaves_dfs() const;
};

// Uniform binary tree with k leaves by Remy's insertion, iid fair signs.
// With plane = true the side of each insertion is a fair coin as well.
SignedLeafTree remy_tree(int k, bool plane, Rng& rng);

// Calls f on every leaf-labelled binary tree with k leaves, each with all
// 2^{k-1} sign patterns; each outcome is equally likely under remy_tree.
void for_each_signed_binary_tree(int k, bool plane, const std::function<void(const SignedLeafTree&)>& f);

}  // namespace pdl

#endif
