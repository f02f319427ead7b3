#include "pdl/cotree.hpp"

#include <mutex>
#include <numeric>
#include <stdexcept>

namespace pdl {

Graph cotree_to_cograph(const SignedLeafTree& t, bool strict) {
  if (strict && !t.is_alternating()) throw std::invalid_argument("cotree_to_cograph: signs do not alternate");
  int n = t.num_leaves();
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (t.leaf_lca_sign(i, j) > 0) g.set_edge(i, j);
  return g;
}

CographSampler::CographSampler(int n_max) : n_max_(n_max) {
  if (n_max < 1) throw std::invalid_argument("CographSampler: n_max >= 1");
  t_ = fixpoint_cotree<double>(n_max, rho_O());
  f_ = ps_exp(t_);
}

namespace {

// Draws k in [1, kmax] with weight k t_k f_{m-k}.
int chain_step(const Series& t, const Series& f, int m, int kmax, double total, Rng& rng) {
  double x = uniform01(rng) * total;
  int last = 1;
  for (int k = 1; k <= kmax; ++k) {
    double c = k * t[k] * f[m - k];
    if (c <= 0) continue;
    last = k;
    if (x < c) return k;
    x -= c;
  }
  return last;
}

}  // namespace

SignedLeafTree CographSampler::sample(int n, Rng& rng) const {
  if (n < 1) throw std::invalid_argument("sample_cotree: n >= 1");
  if (n > n_max_) throw std::invalid_argument("sample_cotree: n above the sampler table");
  SignedLeafTree tr;
  tr.nodes.reserve(2 * n);
  struct Job {
    int node;
    int leaves;
  };
  std::vector<Job> jobs;
  auto make = [&](int parent, int sign) {
    SignedLeafTree::Node nd;
    nd.parent = parent;
    nd.sign = sign;
    tr.nodes.push_back(nd);
    return static_cast<int>(tr.nodes.size()) - 1;
  };
  tr.root = make(-1, coin(rng) ? +1 : -1);
  jobs.push_back({tr.root, n});
  int next_label = 0;
  std::vector<int> sizes;
  while (!jobs.empty()) {
    Job jb = jobs.back();
    jobs.pop_back();
    if (jb.leaves == 1) {
      tr.nodes[jb.node].leaf = next_label++;
      continue;
    }
    sizes.clear();
    int j = jb.leaves;
    // f_j - t_j = t_j for j >= 2
    int k = chain_step(t_, f_, j, j - 1, j * t_[j], rng);
    sizes.push_back(k);
    int m = j - k;
    while (m > 0) {
      k = chain_step(t_, f_, m, m, m * f_[m], rng);
      sizes.push_back(k);
      m -= k;
    }
    shuffle_range(sizes.begin(), sizes.end(), rng);
    int sign = -tr.nodes[jb.node].sign;
    for (int s : sizes) {
      int c = make(jb.node, sign);
      tr.nodes[jb.node].children.push_back(c);
      jobs.push_back({c, s});
    }
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  shuffle_range(perm.begin(), perm.end(), rng);
  for (auto& nd : tr.nodes)
    if (nd.leaf >= 0) nd.leaf = perm[nd.leaf];
  tr.finalize();
  return tr;
}

std::shared_ptr<const CographSampler> shared_cograph_sampler(int n) {
  static std::mutex mu;
  static std::shared_ptr<const CographSampler> cur;
  std::lock_guard<std::mutex> lock(mu);
  if (!cur || cur->n_max() < n) cur = std::make_shared<CographSampler>(std::max(n, cur ? 2 * cur->n_max() : 64));
  return cur;
}

SignedLeafTree sample_cotree_conditioned(int n, Rng& rng) { return shared_cograph_sampler(n)->sample(n, rng); }

Graph brownian_marginal_sample(int k, Rng& rng) { return cotree_to_cograph(remy_tree(k, false, rng)); }

Law brownian_marginal_distribution(int k) {
  if (k < 1) throw std::invalid_argument("brownian_marginal_distribution: k >= 1");
  if (k > 6) throw std::length_error("brownian_marginal_distribution: exact law only for k <= 6");
  double count = std::ldexp(1.0, k - 1);
  for (int i = 3; i <= 2 * k - 3; i += 2) count *= i;
  Law law;
  for_each_signed_binary_tree(k, false, [&](const SignedLeafTree& t) { law[cotree_to_cograph(t).key()] += 1.0 / count; });
  return law;
}

}  // namespace pdl
