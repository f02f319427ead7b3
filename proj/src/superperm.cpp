#include "pdl/superperm.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace pdl {

Superpermutation assemble_superperm(const Permutation& head, std::vector<Permutation> components, int d) {
  if (static_cast<int>(components.size()) != head.n())
    throw std::invalid_argument("assemble_superperm: head size differs from the number of components");
  Superpermutation s;
  s.d = d;
  s.head = head;
  for (const auto& c : components) s.block_sizes.push_back(c.n());
  s.flat = substitute(head, components);
  s.components = std::move(components);
  return s;
}

std::shared_ptr<SuperpermSampler> SuperpermSampler::iterated(int d, int n_max) {
  if (d < 2) throw std::invalid_argument("SuperpermSampler: d >= 2");
  std::shared_ptr<SuperpermSampler> s(new SuperpermSampler());
  s->d_ = d;
  s->n_max_ = n_max;
  s->table_ = std::make_unique<GibbsTable>(gibbs_model_Pd(d, n_max), n_max);
  s->seps_ = shared_separable_sampler(std::max(n_max, 1));
  s->pd1_ = class_Pd<double>(d - 1, n_max, rho_P());
  if (d >= 3) s->inner_ = iterated(d - 1, n_max);
  return s;
}

std::shared_ptr<SuperpermSampler> SuperpermSampler::weighted(double q, int n_max) {
  std::shared_ptr<SuperpermSampler> s(new SuperpermSampler());
  s->weighted_ = true;
  s->n_max_ = n_max;
  s->table_ = std::make_unique<GibbsTable>(gibbs_model_weighted(BaseClass::Separable, q, n_max), n_max);
  s->seps_ = shared_separable_sampler(std::max(n_max, 1));
  return s;
}

std::pair<Permutation, SuperpermPtr> SuperpermSampler::inner(int m, Rng& rng) const {
  if (d_ == 2) return {seps_->sample(m, rng), nullptr};
  auto sp = std::make_shared<const Superpermutation>(inner_->sample(m, rng));
  return {sp->flat, sp};
}

Superpermutation SuperpermSampler::sample(int n, Rng& rng) const {
  if (n < 1) throw std::invalid_argument("superperm sample: n >= 1");
  if (n > n_max_) throw std::invalid_argument("superperm sample: n above the sampler table");
  PartitionSample ps = table_->sample(n, rng);
  Permutation head = seps_->sample(ps.num_components, rng);
  std::vector<Permutation> comps;
  std::vector<int> split;
  std::vector<std::pair<SuperpermPtr, SuperpermPtr>> halves;
  for (int m : ps.sizes) {
    if (weighted_) {
      comps.push_back(seps_->sample(m, rng));
      continue;
    }
    // split point s with probability p_s p_{m-s} / [z^m] P_{d-1}^2
    double total = 0;
    for (int s = 1; s < m; ++s) total += pd1_[s] * pd1_[m - s];
    double x = uniform01(rng) * total;
    int s = m - 1;
    for (int t = 1; t < m; ++t) {
      double c = pd1_[t] * pd1_[m - t];
      if (x < c) {
        s = t;
        break;
      }
      x -= c;
    }
    auto left = inner(s, rng);
    auto right = inner(m - s, rng);
    comps.push_back(substitute(Permutation::identity(2), {left.first, right.first}));
    split.push_back(s);
    halves.emplace_back(left.second, right.second);
  }
  Superpermutation out = assemble_superperm(head, std::move(comps), weighted_ ? 2 : d_);
  out.split = std::move(split);
  out.halves = std::move(halves);
  return out;
}

namespace {

template <class Key, class Make>
std::shared_ptr<SuperpermSampler> cached(std::map<Key, std::shared_ptr<SuperpermSampler>>& m, const Key& key,
                                         Make make) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = m.find(key);
  if (it != m.end()) return it->second;
  auto s = make();
  m.emplace(key, s);
  return s;
}

}  // namespace

Superpermutation sample_Pd(int n, int d, Rng& rng) {
  static std::map<std::pair<int, int>, std::shared_ptr<SuperpermSampler>> m;
  return cached(m, std::make_pair(d, n), [&] { return SuperpermSampler::iterated(d, n); })->sample(n, rng);
}

Superpermutation sample_weighted_sep(int n, double q, Rng& rng) {
  static std::map<std::pair<double, int>, std::shared_ptr<SuperpermSampler>> m;
  return cached(m, std::make_pair(q, n), [&] { return SuperpermSampler::weighted(q, n); })->sample(n, rng);
}

}  // namespace pdl
