#ifndef PDL_COTREE_HPP
#define PDL_COTREE_HPP

#include <memory>

#include "pdl/graph.hpp"
#include "pdl/series.hpp"
#include "pdl/tree.hpp"

namespace pdl {

// i ~ j iff the last common ancestor of leaves i, j carries a plus sign.
Graph cotree_to_cograph(const SignedLeafTree& t, bool strict = false);

// Uniform labelled cotrees with n leaves by the recursive method on T(z).
// A node with j leaves splits along the least-label chain: the block of the
// least label has size k with probability (k/j) t_k f_{j-k} / t_j, f = exp(T),
// and later blocks out of m remaining leaves with (k/m) t_k f_{m-k} / f_m.
// Children come out in a uniform order and labels by a uniform bijection.
class CographSampler {
 public:
  explicit CographSampler(int n_max);
  int n_max() const { return n_max_; }
  SignedLeafTree sample(int n, Rng& rng) const;

 private:
  int n_max_;
  Series t_, f_;
};

SignedLeafTree sample_cotree_conditioned(int n, Rng& rng);
// Process-wide sampler, grown on demand.
std::shared_ptr<const CographSampler> shared_cograph_sampler(int n);

Graph brownian_marginal_sample(int k, Rng& rng);
Law brownian_marginal_distribution(int k);

}  // namespace pdl

#endif
