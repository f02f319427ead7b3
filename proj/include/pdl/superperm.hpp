#ifndef PDL_SUPERPERM_HPP
#define PDL_SUPERPERM_HPP

#include <memory>
#include <vector>

#include "pdl/gibbs.hpp"
#include "pdl/perm.hpp"

namespace pdl {

struct Superpermutation;
using SuperpermPtr = std::shared_ptr<const Superpermutation>;

// Head with its blocks blown up; flat = head[components...].
struct Superpermutation {
  int d = 1;
  Permutation head;
  std::vector<Permutation> components;   // flat view of each block
  std::vector<int> block_sizes;
  // P_d blocks are id_2[P, P'] pairs: split[i] = |P| (0 if unused), and
  // the nested halves when d >= 3
  std::vector<int> split;
  std::vector<std::pair<SuperpermPtr, SuperpermPtr>> halves;
  Permutation flat;

  int n() const { return flat.n(); }
};

Superpermutation assemble_superperm(const Permutation& head, std::vector<Permutation> components, int d = 2);

class SuperpermSampler {
 public:
  static std::shared_ptr<SuperpermSampler> iterated(int d, int n_max);
  static std::shared_ptr<SuperpermSampler> weighted(double q, int n_max);

  Superpermutation sample(int n, Rng& rng) const;
  const GibbsTable& table() const { return *table_; }

 private:
  SuperpermSampler() = default;
  // uniform P_{d-1} structure of size m as (flat, nested record)
  std::pair<Permutation, SuperpermPtr> inner(int m, Rng& rng) const;

  int d_ = 2;
  bool weighted_ = false;
  int n_max_ = 0;
  std::unique_ptr<GibbsTable> table_;
  std::shared_ptr<const SeparableSampler> seps_;
  std::shared_ptr<SuperpermSampler> inner_;
  Series pd1_;  // P_{d-1} tilted at rho_P, for the split point
};

Superpermutation sample_Pd(int n, int d, Rng& rng);
Superpermutation sample_weighted_sep(int n, double q, Rng& rng);

}  // namespace pdl

#endif
