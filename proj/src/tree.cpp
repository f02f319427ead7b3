#include "pdl/tree.hpp"

#include <stdexcept>

namespace pdl {

int SignedLeafTree::add_leaf(int label) {
  Node nd;
  nd.leaf = label;
  nodes.push_back(nd);
  return static_cast<int>(nodes.size()) - 1;
}

int SignedLeafTree::add_internal(int sign, std::vector<int> children) {
  int id = static_cast<int>(nodes.size());
  Node nd;
  nd.sign = sign;
  nd.children = std::move(children);
  nodes.push_back(std::move(nd));
  for (int c : nodes[id].children) nodes[c].parent = id;
  return id;
}

void SignedLeafTree::finalize() {
  if (root < 0 || root >= static_cast<int>(nodes.size())) throw std::invalid_argument("tree: no root");
  nodes[root].parent = -1;
  int leaves = 0;
  std::vector<int> stack{root};
  nodes[root].depth = 0;
  std::size_t seen = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++seen;
    if (nodes[u].leaf >= 0) {
      if (!nodes[u].children.empty()) throw std::invalid_argument("tree: leaf with children");
      ++leaves;
      continue;
    }
    if (nodes[u].children.empty()) throw std::invalid_argument("tree: internal vertex without children");
    for (int c : nodes[u].children) {
      nodes[c].parent = u;
      nodes[c].depth = nodes[u].depth + 1;
      stack.push_back(c);
    }
  }
  if (seen != nodes.size()) throw std::invalid_argument("tree: unreachable nodes");
  leaf_node.assign(leaves, -1);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    int l = nodes[i].leaf;
    if (l < 0) continue;
    if (l >= leaves || leaf_node[l] != -1) throw std::invalid_argument("tree: leaf labels must be 0..k-1");
    leaf_node[l] = i;
  }
}

int SignedLeafTree::lca(int u, int v) const {
  while (nodes[u].depth > nodes[v].depth) u = nodes[u].parent;
  while (nodes[v].depth > nodes[u].depth) v = nodes[v].parent;
  while (u != v) {
    u = nodes[u].parent;
    v = nodes[v].parent;
  }
  return u;
}

bool SignedLeafTree::is_alternating() const {
  for (const auto& nd : nodes) {
    if (nd.leaf >= 0) continue;
    if (nd.children.size() < 2) return false;
    for (int c : nd.children)
      if (nodes[c].leaf < 0 && nodes[c].sign == nd.sign) return false;
  }
  return true;
}

std::vector<int> SignedLeafTree::leaves_dfs() const {
  std::vector<int> out;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (nodes[u].leaf >= 0) {
      out.push_back(nodes[u].leaf);
      continue;
    }
    for (auto it = nodes[u].children.rbegin(); it != nodes[u].children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

namespace {

// Replace x by a new internal vertex with children x and a fresh leaf.
void remy_insert(SignedLeafTree& t, int x, int label, bool leaf_first) {
  int leaf = t.add_leaf(label);
  int par = t.nodes[x].parent;
  std::vector<int> ch = leaf_first ? std::vector<int>{leaf, x} : std::vector<int>{x, leaf};
  int y = t.add_internal(+1, ch);
  t.nodes[y].parent = par;
  if (par < 0) {
    t.root = y;
  } else {
    for (int& c : t.nodes[par].children)
      if (c == x) c = y;
  }
}

}  // namespace

SignedLeafTree remy_tree(int k, bool plane, Rng& rng) {
  if (k < 1) throw std::invalid_argument("remy_tree: k >= 1");
  SignedLeafTree t;
  t.plane = plane;
  t.root = t.add_leaf(0);
  for (int i = 1; i < k; ++i) {
    int x = static_cast<int>(uniform_index(t.nodes.size(), rng));
    remy_insert(t, x, i, plane && coin(rng));
  }
  for (auto& nd : t.nodes)
    if (nd.leaf < 0) nd.sign = coin(rng) ? +1 : -1;
  t.finalize();
  return t;
}

void for_each_signed_binary_tree(int k, bool plane, const std::function<void(const SignedLeafTree&)>& f) {
  if (k < 1 || k > 8) throw std::invalid_argument("for_each_signed_binary_tree: 1 <= k <= 8");
  std::function<void(const SignedLeafTree&, int)> grow = [&](const SignedLeafTree& t, int next) {
    if (next == k) {
      std::vector<int> internal;
      for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i)
        if (t.nodes[i].leaf < 0) internal.push_back(i);
      for (unsigned mask = 0; mask < (1u << internal.size()); ++mask) {
        SignedLeafTree s = t;
        for (std::size_t j = 0; j < internal.size(); ++j) s.nodes[internal[j]].sign = (mask >> j & 1) ? -1 : +1;
        s.finalize();
        f(s);
      }
      return;
    }
    for (int x = 0; x < static_cast<int>(t.nodes.size()); ++x) {
      for (int side = 0; side < (plane ? 2 : 1); ++side) {
        SignedLeafTree s = t;
        remy_insert(s, x, next, side == 1);
        grow(s, next + 1);
      }
    }
  };
  SignedLeafTree t;
  t.plane = plane;
  t.root = t.add_leaf(0);
  grow(t, 1);
}

}  // namespace pdl
