#include "pdl/perm.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace pdl {

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::from_key(const std::string& key) {
  std::vector<int> v;
  if (key.find(',') != std::string::npos) {
    std::size_t p = 0;
    while (p <= key.size()) {
      std::size_t q = key.find(',', p);
      if (q == std::string::npos) q = key.size();
      v.push_back(std::stoi(key.substr(p, q - p)) - 1);
      p = q + 1;
    }
  } else {
    for (char c : key) {
      if (c < '1' || c > '9') throw std::invalid_argument("Permutation::from_key: bad digit");
      v.push_back(c - '1');
    }
  }
  Permutation s(std::move(v));
  if (!s.valid()) throw std::invalid_argument("Permutation::from_key: not a permutation");
  return s;
}

std::string Permutation::key() const {
  std::string s;
  for (int i = 0; i < n(); ++i) {
    if (n() > 9 && i > 0) s.push_back(',');
    if (n() > 9) s += std::to_string(v[i] + 1);
    else s.push_back(static_cast<char>('1' + v[i]));
  }
  return s;
}

bool Permutation::valid() const {
  std::vector<char> seen(v.size(), 0);
  for (int x : v) {
    if (x < 0 || x >= n() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

Permutation Permutation::reverse_complement() const {
  std::vector<int> w(v.size());
  for (int i = 0; i < n(); ++i) w[n() - 1 - i] = n() - 1 - v[i];
  return Permutation(std::move(w));
}

Permutation pattern(const Permutation& s, const std::vector<int>& I) {
  if (I.empty()) throw std::invalid_argument("pattern: empty index set");
  std::vector<int> idx(I.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return s[I[a]] < s[I[b]]; });
  std::vector<int> out(I.size());
  for (std::size_t r = 0; r < idx.size(); ++r) out[idx[r]] = static_cast<int>(r);
  return Permutation(std::move(out));
}

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

template <class F>
void for_each_subset(int n, int k, F f) {
  std::vector<int> I(k);
  std::iota(I.begin(), I.end(), 0);
  for (;;) {
    f(I);
    int i = k - 1;
    while (i >= 0 && I[i] == n - k + i) --i;
    if (i < 0) return;
    ++I[i];
    for (int j = i + 1; j < k; ++j) I[j] = I[j - 1] + 1;
  }
}

std::vector<int> random_subset(int n, int k, Rng& rng) {
  // Floyd's algorithm
  std::vector<int> out;
  for (int j = n - k; j < n; ++j) {
    int t = static_cast<int>(uniform_index(j + 1, rng));
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    else out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Law pattern_law_exact(const Permutation& s, int k, double budget) {
  if (k < 1 || k > s.n()) throw std::invalid_argument("pattern_law_exact: 1 <= k <= n");
  double total = binom(s.n(), k);
  if (total > budget) throw std::length_error("pattern_law_exact: C(n,k) over budget, use occ_mc");
  Law law;
  for_each_subset(s.n(), k, [&](const std::vector<int>& I) { law[pattern(s, I).key()] += 1.0 / total; });
  return law;
}

double occ_exact(const Permutation& nu, const Permutation& s, double budget) {
  int k = nu.n();
  if (k < 1 || k > s.n()) throw std::invalid_argument("occ_exact: 1 <= |nu| <= |sigma|");
  double total = binom(s.n(), k);
  if (total > budget) throw std::length_error("occ_exact: C(n,k) over budget, use occ_mc");
  long hits = 0;
  for_each_subset(s.n(), k, [&](const std::vector<int>& I) {
    if (pattern(s, I) == nu) ++hits;
  });
  return hits / total;
}

Estimate occ_mc(const Permutation& nu, const Permutation& s, std::size_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("occ_mc: samples > 0");
  int k = nu.n();
  if (k < 1 || k > s.n()) throw std::invalid_argument("occ_mc: 1 <= |nu| <= |sigma|");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i)
    if (pattern(s, random_subset(s.n(), k, rng)) == nu) ++hits;
  Estimate e;
  e.value = static_cast<double>(hits) / samples;
  e.se = std::sqrt(e.value * (1 - e.value) / samples);
  return e;
}

Permutation substitute(const Permutation& theta, const std::vector<Permutation>& nus) {
  if (static_cast<int>(nus.size()) != theta.n()) throw std::invalid_argument("substitute: arity mismatch");
  int r = theta.n();
  std::vector<int> by_value(r);
  for (int i = 0; i < r; ++i) by_value[theta[i]] = i;
  std::vector<int> voff(r);
  int acc = 0;
  for (int val = 0; val < r; ++val) {
    voff[by_value[val]] = acc;
    acc += nus[by_value[val]].n();
  }
  std::vector<int> out;
  out.reserve(acc);
  for (int i = 0; i < r; ++i)
    for (int x : nus[i].v) out.push_back(voff[i] + x);
  return Permutation(std::move(out));
}

Permutation decomp_tree_to_perm(const SignedLeafTree& t) {
  if (t.root < 0) throw std::invalid_argument("decomp_tree_to_perm: empty tree");
  const auto& nd = t.nodes;
  std::vector<int> order;  // preorder
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    if (nd[u].leaf < 0 && nd[u].children.empty()) throw std::invalid_argument("decomp_tree_to_perm: malformed tree");
    for (auto it = nd[u].children.rbegin(); it != nd[u].children.rend(); ++it) stack.push_back(*it);
  }
  std::vector<int> leaves(nd.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int u = *it;
    if (nd[u].leaf >= 0) leaves[u] = 1;
    else
      for (int c : nd[u].children) leaves[u] += leaves[c];
  }
  std::vector<int> lo(nd.size(), 0);
  std::vector<int> out;
  out.reserve(leaves[t.root]);
  for (int u : order) {
    if (nd[u].leaf >= 0) {
      out.push_back(lo[u]);
      continue;
    }
    if (nd[u].sign > 0) {
      int acc = lo[u];
      for (int c : nd[u].children) {
        lo[c] = acc;
        acc += leaves[c];
      }
    } else {
      int acc = lo[u] + leaves[u];
      for (int c : nd[u].children) {
        acc -= leaves[c];
        lo[c] = acc;
      }
    }
  }
  return Permutation(std::move(out));
}

SeparableSampler::SeparableSampler(int n_max) : n_max_(n_max) {
  if (n_max < 1) throw std::invalid_argument("SeparableSampler: n_max >= 1");
  a_ = class_sep_A<double>(n_max, rho_P());
  q0_ = ps_geometric(a_);
}

namespace {

int sequence_step(const Series& a, const Series& q, int m, int kmax, double total, Rng& rng) {
  double x = uniform01(rng) * total;
  int last = 1;
  for (int k = 1; k <= kmax; ++k) {
    double c = a[k] * q[m - k];
    if (c <= 0) continue;
    last = k;
    if (x < c) return k;
    x -= c;
  }
  return last;
}

}  // namespace

SignedLeafTree SeparableSampler::sample_tree(int n, Rng& rng) const {
  if (n < 1) throw std::invalid_argument("sample_decomp_tree: n >= 1");
  if (n > n_max_) throw std::invalid_argument("sample_decomp_tree: n above the sampler table");
  SignedLeafTree tr;
  tr.plane = true;
  tr.nodes.reserve(2 * n);
  struct Job {
    int node;
    int leaves;
  };
  auto make = [&](int parent, int sign) {
    SignedLeafTree::Node nd;
    nd.parent = parent;
    nd.sign = sign;
    tr.nodes.push_back(nd);
    return static_cast<int>(tr.nodes.size()) - 1;
  };
  tr.root = make(-1, coin(rng) ? +1 : -1);
  std::vector<Job> jobs{{tr.root, n}};
  std::vector<int> sizes;
  int next_label = 0;
  while (!jobs.empty()) {
    Job jb = jobs.back();
    jobs.pop_back();
    if (jb.leaves == 1) {
      tr.nodes[jb.node].leaf = next_label++;
      continue;
    }
    sizes.clear();
    int j = jb.leaves;
    // Q1_m = Q0_m for m >= 1
    int k = sequence_step(a_, q0_, j, j - 1, a_[j], rng);
    sizes.push_back(k);
    int m = j - k;
    while (m > 0) {
      k = sequence_step(a_, q0_, m, m, q0_[m], rng);
      sizes.push_back(k);
      m -= k;
    }
    int sign = -tr.nodes[jb.node].sign;
    std::size_t first = tr.nodes.size();
    for (std::size_t i = 0; i < sizes.size(); ++i) tr.nodes[jb.node].children.push_back(make(jb.node, sign));
    for (std::size_t i = sizes.size(); i-- > 0;) jobs.push_back({static_cast<int>(first + i), sizes[i]});
  }
  tr.finalize();
  return tr;
}

std::shared_ptr<const SeparableSampler> shared_separable_sampler(int n) {
  static std::mutex mu;
  static std::shared_ptr<const SeparableSampler> cur;
  std::lock_guard<std::mutex> lock(mu);
  if (!cur || cur->n_max() < n) cur = std::make_shared<SeparableSampler>(std::max(n, cur ? 2 * cur->n_max() : 64));
  return cur;
}

SignedLeafTree sample_decomp_tree_conditioned(int n, Rng& rng) { return shared_separable_sampler(n)->sample_tree(n, rng); }

Permutation brownian_perm_marginal_sample(int k, Rng& rng) { return decomp_tree_to_perm(remy_tree(k, true, rng)); }

Law brownian_perm_marginal_distribution(int k) {
  if (k < 1) throw std::invalid_argument("brownian_perm_marginal_distribution: k >= 1");
  if (k > 6) throw std::length_error("brownian_perm_marginal_distribution: exact law only for k <= 6");
  double count = std::ldexp(1.0, 2 * (k - 1));
  for (int i = 3; i <= 2 * k - 3; i += 2) count *= i;
  Law law;
  for_each_signed_binary_tree(k, true, [&](const SignedLeafTree& t) { law[decomp_tree_to_perm(t).key()] += 1.0 / count; });
  return law;
}

}  // namespace pdl
