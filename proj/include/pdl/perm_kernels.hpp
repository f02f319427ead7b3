#ifndef PDL_PERM_KERNELS_HPP
#define PDL_PERM_KERNELS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "pdl/pd.hpp"
#include "pdl/perm.hpp"

namespace pdl {

// A random permuton seen through Perm(k, mu). Exact laws keyed by Permutation::key().
class PermMarginalKernel {
 public:
  virtual ~PermMarginalKernel() = default;
  virtual Permutation sample(int k, Rng& rng) const = 0;
  virtual std::string id() const = 0;
  virtual int exact_limit() const { return 0; }
  std::optional<Law> exact_distribution(int k) const;

 protected:
  virtual Law compute_exact(int k) const = 0;

 private:
  mutable std::mutex mu_;
  mutable std::map<int, Law> cache_;
};

using PermKernelPtr = std::shared_ptr<const PermMarginalKernel>;

class BrownianPermKernel : public PermMarginalKernel {
 public:
  Permutation sample(int k, Rng& rng) const override { return brownian_perm_marginal_sample(k, rng); }
  std::string id() const override { return "brownian"; }
  int exact_limit() const override { return 6; }

 protected:
  Law compute_exact(int k) const override { return brownian_perm_marginal_distribution(k); }
};

// The head pattern is taken among the tables in the order in which they
// were first hit. That order is independent of the atoms' positions, so
// table sizes land on head positions by a uniform bijection.
class PDPermutonKernel : public PermMarginalKernel {
 public:
  PDPermutonKernel(PDParams p, PermKernelPtr head, PermKernelPtr comp)
      : p_(p), head_(std::move(head)), comp_(std::move(comp)) {}
  Permutation sample(int k, Rng& rng) const override;
  std::string id() const override;
  int exact_limit() const override { return 5; }

 protected:
  Law compute_exact(int k) const override;

 private:
  PDParams p_;
  PermKernelPtr head_, comp_;
};

Permutation pd_permuton_marginal_sample(int k, const PDParams& p, const PermMarginalKernel& head,
                                        const PermMarginalKernel& comp, Rng& rng);
Law pd_permuton_marginal_distribution(int k, const PDParams& p, const PermMarginalKernel& head,
                                      const PermMarginalKernel& comp);

PermKernelPtr brownian_perm_kernel();
// mu^(1) Brownian, mu^(d) = mu_PD(2^{-(d-1)}, -2^{-d}, Brownian, mu^(d-1)), d <= 6
PermKernelPtr iterated_perm_kernel(int d);

// Law of the pattern at a uniform (k-1)-subset of positions.
Law restrict_perm_law(const Law& law, int k);

}  // namespace pdl

#endif
