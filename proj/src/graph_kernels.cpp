#include "pdl/graph_kernels.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

#include "pdl/cotree.hpp"

namespace pdl {

std::optional<Law> MarginalKernel::exact_distribution(int k) const {
  if (k < 1) throw std::invalid_argument("exact_distribution: k >= 1");
  if (k > exact_limit()) return std::nullopt;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
  }
  Law law = compute_exact(k);
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(k, law);
  return law;
}

Graph BrownianGraphKernel::sample(int k, Rng& rng) const { return brownian_marginal_sample(k, rng); }
Law BrownianGraphKernel::compute_exact(int k) const { return brownian_marginal_distribution(k); }

Graph pd_graphon_marginal_sample(int k, const PDParams& p, const MarginalKernel& head, const MarginalKernel& comp,
                                 Rng& rng) {
  if (k < 1) throw std::invalid_argument("pd_graphon_marginal_sample: k >= 1");
  std::vector<int> table = crp_tables(p, k, rng);
  int r = 0;
  for (int t : table) r = std::max(r, t + 1);
  std::vector<int> size(r, 0), local(k);
  for (int i = 0; i < k; ++i) local[i] = size[table[i]]++;
  Graph H = head.sample(r, rng);
  std::vector<Graph> C;
  C.reserve(r);
  for (int t = 0; t < r; ++t) C.push_back(comp.sample(size[t], rng));
  Graph g(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      bool e = table[i] == table[j] ? C[table[i]].adj(local[i], local[j]) : H.adj(table[i], table[j]);
      if (e) g.set_edge(i, j);
    }
  return g;
}

Law pd_graphon_marginal_distribution(int k, const PDParams& p, const MarginalKernel& head,
                                     const MarginalKernel& comp) {
  if (k < 1 || k > 5) throw std::length_error("pd_graphon_marginal_distribution: 1 <= k <= 5");
  std::vector<std::optional<Law>> hl(k + 1), cl(k + 1);
  for (int r = 1; r <= k; ++r) {
    hl[r] = head.exact_distribution(r);
    cl[r] = comp.exact_distribution(r);
    if (!hl[r] || !cl[r]) throw std::invalid_argument("pd_graphon_marginal_distribution: kernel without exact law at " + std::to_string(r));
  }
  Law out;
  for_each_set_partition(k, [&](const SetPartition& sp) {
    int r = static_cast<int>(sp.blocks.size());
    double w = eppf_exchangeable(p, sp.sizes());
    if (w == 0) return;
    std::vector<int> table(k), local(k);
    for (int t = 0; t < r; ++t)
      for (std::size_t a = 0; a < sp.blocks[t].size(); ++a) {
        table[sp.blocks[t][a]] = t;
        local[sp.blocks[t][a]] = static_cast<int>(a);
      }
    std::vector<const std::string*> ckeys(r);
    std::function<void(int, double, const Graph&)> rec = [&](int t, double pr, const Graph& H) {
      if (t == r) {
        Graph g(k);
        std::vector<Graph> C;
        for (int s = 0; s < r; ++s) C.push_back(Graph::from_key(static_cast<int>(sp.blocks[s].size()), *ckeys[s]));
        for (int i = 0; i < k; ++i)
          for (int j = i + 1; j < k; ++j) {
            bool e = table[i] == table[j] ? C[table[i]].adj(local[i], local[j]) : H.adj(table[i], table[j]);
            if (e) g.set_edge(i, j);
          }
        out[g.key()] += pr;
        return;
      }
      for (const auto& [key, q] : *cl[sp.blocks[t].size()]) {
        ckeys[t] = &key;
        rec(t + 1, pr * q, H);
      }
    };
    for (const auto& [hk, hp] : *hl[r]) rec(0, w * hp, Graph::from_key(r, hk));
  });
  return out;
}

Graph PDGraphonKernel::sample(int k, Rng& rng) const { return pd_graphon_marginal_sample(k, p_, *head_, *comp_, rng); }

Law PDGraphonKernel::compute_exact(int k) const { return pd_graphon_marginal_distribution(k, p_, *head_, *comp_); }

std::string PDGraphonKernel::id() const {
  std::ostringstream os;
  os << "pd(" << p_.alpha << "," << p_.theta << ";" << head_->id() << "," << comp_->id() << ")";
  return os.str();
}

KernelPtr brownian_kernel() {
  static KernelPtr k = std::make_shared<BrownianGraphKernel>();
  return k;
}

KernelPtr iterated_marginal_kernel(int d) {
  if (d < 1 || d > 6) throw std::invalid_argument("iterated_marginal_kernel: 1 <= d <= 6");
  static std::mutex mu;
  static std::vector<KernelPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.empty()) cache.push_back(brownian_kernel());
  while (static_cast<int>(cache.size()) < d) {
    int e = static_cast<int>(cache.size()) + 1;
    PDParams p(std::ldexp(1.0, -(e - 1)), -std::ldexp(1.0, -e));
    cache.push_back(std::make_shared<PDGraphonKernel>(p, brownian_kernel(), cache.back()));
  }
  return cache[d - 1];
}

Law restrict_graph_law(const Law& law, int k) {
  if (k < 2) throw std::invalid_argument("restrict_graph_law: k >= 2");
  Law out;
  for (const auto& [key, p] : law) {
    Graph g = Graph::from_key(k, key);
    for (int v = 0; v < k; ++v) {
      std::vector<int> keep;
      for (int u = 0; u < k; ++u)
        if (u != v) keep.push_back(u);
      out[g.induced(keep).key()] += p / k;
    }
  }
  return out;
}

}  // namespace pdl
