#include "pdl/perm_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pdl {

std::optional<Law> PermMarginalKernel::exact_distribution(int k) const {
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

Permutation pd_permuton_marginal_sample(int k, const PDParams& p, const PermMarginalKernel& head,
                                        const PermMarginalKernel& comp, Rng& rng) {
  if (k < 1) throw std::invalid_argument("pd_permuton_marginal_sample: k >= 1");
  std::vector<int> table = crp_tables(p, k, rng);
  int r = 0;
  for (int t : table) r = std::max(r, t + 1);
  std::vector<int> size(r, 0);
  for (int t : table) ++size[t];
  Permutation nu = head.sample(r, rng);
  std::vector<int> pos(r);
  std::iota(pos.begin(), pos.end(), 0);
  shuffle_range(pos.begin(), pos.end(), rng);
  std::vector<Permutation> blocks(r);
  for (int t = 0; t < r; ++t) blocks[pos[t]] = comp.sample(size[t], rng);
  return substitute(nu, blocks);
}

Law pd_permuton_marginal_distribution(int k, const PDParams& p, const PermMarginalKernel& head,
                                      const PermMarginalKernel& comp) {
  if (k < 1 || k > 5) throw std::length_error("pd_permuton_marginal_distribution: 1 <= k <= 5");
  std::vector<std::optional<Law>> hl(k + 1), cl(k + 1);
  for (int r = 1; r <= k; ++r) {
    hl[r] = head.exact_distribution(r);
    cl[r] = comp.exact_distribution(r);
    if (!hl[r] || !cl[r])
      throw std::invalid_argument("pd_permuton_marginal_distribution: kernel without exact law at " + std::to_string(r));
  }
  Law out;
  for_each_composition(k, [&](const Composition& c) {
    double w = composition_prob(p, c);
    if (w == 0) return;
    int r = static_cast<int>(c.size());
    std::vector<int> pos(r);
    std::iota(pos.begin(), pos.end(), 0);
    double bij = std::tgamma(r + 1.0);
    do {
      // head position pos[t] holds table t
      std::vector<int> sz(r);
      for (int t = 0; t < r; ++t) sz[pos[t]] = c[t];
      std::vector<Permutation> blocks(r);
      std::function<void(int, double, const Permutation&)> rec = [&](int i, double pr, const Permutation& nu) {
        if (i == r) {
          out[substitute(nu, blocks).key()] += pr;
          return;
        }
        for (const auto& [key, q] : *cl[sz[i]]) {
          blocks[i] = Permutation::from_key(key);
          rec(i + 1, pr * q, nu);
        }
      };
      for (const auto& [hk, hp] : *hl[r]) rec(0, w * hp / bij, Permutation::from_key(hk));
    } while (std::next_permutation(pos.begin(), pos.end()));
  });
  return out;
}

Permutation PDPermutonKernel::sample(int k, Rng& rng) const {
  return pd_permuton_marginal_sample(k, p_, *head_, *comp_, rng);
}

Law PDPermutonKernel::compute_exact(int k) const { return pd_permuton_marginal_distribution(k, p_, *head_, *comp_); }

std::string PDPermutonKernel::id() const {
  std::ostringstream os;
  os << "pd(" << p_.alpha << "," << p_.theta << ";" << head_->id() << "," << comp_->id() << ")";
  return os.str();
}

PermKernelPtr brownian_perm_kernel() {
  static PermKernelPtr k = std::make_shared<BrownianPermKernel>();
  return k;
}

PermKernelPtr iterated_perm_kernel(int d) {
  if (d < 1 || d > 6) throw std::invalid_argument("iterated_perm_kernel: 1 <= d <= 6");
  static std::mutex mu;
  static std::vector<PermKernelPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.empty()) cache.push_back(brownian_perm_kernel());
  while (static_cast<int>(cache.size()) < d) {
    int e = static_cast<int>(cache.size()) + 1;
    PDParams p(std::ldexp(1.0, -(e - 1)), -std::ldexp(1.0, -e));
    cache.push_back(std::make_shared<PDPermutonKernel>(p, brownian_perm_kernel(), cache.back()));
  }
  return cache[d - 1];
}

Law restrict_perm_law(const Law& law, int k) {
  if (k < 2) throw std::invalid_argument("restrict_perm_law: k >= 2");
  Law out;
  for (const auto& [key, p] : law) {
    Permutation s = Permutation::from_key(key);
    for (int v = 0; v < k; ++v) {
      std::vector<int> keep;
      for (int u = 0; u < k; ++u)
        if (u != v) keep.push_back(u);
      out[pattern(s, keep).key()] += p / k;
    }
  }
  return out;
}

}  // namespace pdl
