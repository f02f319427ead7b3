#ifndef PDL_GRAPH_KERNELS_HPP
#define PDL_GRAPH_KERNELS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "pdl/graph.hpp"
#include "pdl/pd.hpp"

namespace pdl {

// A random graphon seen through its finite marginals G(k, W). Exact laws are
// keyed by Graph::key() and memoized per k.
class MarginalKernel {
 public:
  virtual ~MarginalKernel() = default;
  virtual Graph sample(int k, Rng& rng) const = 0;
  virtual std::string id() const = 0;
  virtual int exact_limit() const { return 0; }
  std::optional<Law> exact_distribution(int k) const;

 protected:
  virtual Law compute_exact(int k) const = 0;

 private:
  mutable std::mutex mu_;
  mutable std::map<int, Law> cache_;
};

using KernelPtr = std::shared_ptr<const MarginalKernel>;

class BrownianGraphKernel : public MarginalKernel {
 public:
  Graph sample(int k, Rng& rng) const override;
  std::string id() const override { return "brownian"; }
  int exact_limit() const override { return 6; }

 protected:
  Law compute_exact(int k) const override;
};

class PDGraphonKernel : public MarginalKernel {
 public:
  PDGraphonKernel(PDParams p, KernelPtr head, KernelPtr comp) : p_(p), head_(std::move(head)), comp_(std::move(comp)) {}
  Graph sample(int k, Rng& rng) const override;
  std::string id() const override;
  int exact_limit() const override { return 5; }

 protected:
  Law compute_exact(int k) const override;

 private:
  PDParams p_;
  KernelPtr head_, comp_;
};

Graph pd_graphon_marginal_sample(int k, const PDParams& p, const MarginalKernel& head, const MarginalKernel& comp,
                                 Rng& rng);
Law pd_graphon_marginal_distribution(int k, const PDParams& p, const MarginalKernel& head,
                                     const MarginalKernel& comp);

KernelPtr brownian_kernel();
// W^(1) Brownian, W^(d) = W_PD(2^{-(d-1)}, -2^{-d}, Brownian, W^(d-1)), d <= 6
KernelPtr iterated_marginal_kernel(int d);

// Law of a uniform (k-1)-subset of a k-vertex law, relabelled increasingly.
Law restrict_graph_law(const Law& law, int k);

}  // namespace pdl

#endif
