#ifndef PDL_PERM_HPP
#define PDL_PERM_HPP

#include <memory>
#include <string>
#include <vector>

#include "pdl/graph.hpp"
#include "pdl/series.hpp"
#include "pdl/tree.hpp"

namespace pdl {

// One-line notation, 0-based internally: v[i] = sigma(i+1) - 1.
struct Permutation {
  std::vector<int> v;

  Permutation() = default;
  explicit Permutation(std::vector<int> values) : v(std::move(values)) {}
  static Permutation identity(int n);
  // 1-based digits for n <= 9, comma separated otherwise
  static Permutation from_key(const std::string& key);

  int n() const { return static_cast<int>(v.size()); }
  int operator[](int i) const { return v[i]; }
  std::string key() const;
  bool valid() const;
  Permutation reverse_complement() const;
  bool operator==(const Permutation& o) const { return v == o.v; }
};

// I: sorted distinct positions
Permutation pattern(const Permutation& s, const std::vector<int>& I);
double occ_exact(const Permutation& nu, const Permutation& s, double budget = 1e7);
Estimate occ_mc(const Permutation& nu, const Permutation& s, std::size_t samples, Rng& rng);
// law of the pattern at k uniform positions
Law pattern_law_exact(const Permutation& s, int k, double budget = 1e7);

Permutation substitute(const Permutation& theta, const std::vector<Permutation>& nus);

// Positions follow the leaves in depth-first order; i precedes j in value
// iff their last common ancestor carries a plus sign.
Permutation decomp_tree_to_perm(const SignedLeafTree& t);

// Plane decomposition trees with n leaves by the recursive method on A(z):
// children form a sequence of >= 2 subtrees; the first has k leaves with
// probability a_k Q1_{j-k} / a_j, later ones a_k Q0_{m-k} / Q1_m, where
// Q0 = 1/(1-A) and Q1 = Q0 - 1.
class SeparableSampler {
 public:
  explicit SeparableSampler(int n_max);
  int n_max() const { return n_max_; }
  SignedLeafTree sample_tree(int n, Rng& rng) const;
  Permutation sample(int n, Rng& rng) const { return decomp_tree_to_perm(sample_tree(n, rng)); }

 private:
  int n_max_;
  Series a_, q0_;
};

std::shared_ptr<const SeparableSampler> shared_separable_sampler(int n);
SignedLeafTree sample_decomp_tree_conditioned(int n, Rng& rng);

Permutation brownian_perm_marginal_sample(int k, Rng& rng);
Law brownian_perm_marginal_distribution(int k);

}  // namespace pdl

#endif
