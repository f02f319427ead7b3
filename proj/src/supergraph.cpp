#include "pdl/supergraph.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace pdl {

int part_size(const GraphPart& p) {
  if (auto g = std::get_if<Graph>(&p)) return g->n();
  if (auto t = std::get_if<SignedLeafTree>(&p)) return t->num_leaves();
  return std::get<std::shared_ptr<const Supergraph>>(p)->n;
}

bool part_adj(const GraphPart& p, int i, int j) {
  if (auto g = std::get_if<Graph>(&p)) return g->adj(i, j);
  if (auto t = std::get_if<SignedLeafTree>(&p)) return t->leaf_lca_sign(i, j) > 0;
  return std::get<std::shared_ptr<const Supergraph>>(p)->adjacent(i, j);
}

Graph part_flatten(const GraphPart& p) {
  if (auto g = std::get_if<Graph>(&p)) return *g;
  if (auto t = std::get_if<SignedLeafTree>(&p)) return cotree_to_cograph(*t);
  return std::get<std::shared_ptr<const Supergraph>>(p)->flatten();
}

bool Supergraph::adjacent(int i, int j) const {
  if (i == j) return false;
  int a = block_of[i], b = block_of[j];
  if (a == b) return part_adj(components[a], local[i], local[j]);
  return part_adj(head, a, b);
}

Graph Supergraph::flatten() const {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adjacent(i, j)) g.set_edge(i, j);
  return g;
}

std::vector<int> Supergraph::component_sizes() const {
  std::vector<int> s;
  for (const auto& b : blocks) s.push_back(static_cast<int>(b.size()));
  return s;
}

Supergraph assemble_supergraph(GraphPart head, std::vector<GraphPart> components, int d) {
  if (part_size(head) != static_cast<int>(components.size()))
    throw std::invalid_argument("assemble_supergraph: head size differs from the number of components");
  Supergraph s;
  s.d = d;
  s.head = std::move(head);
  s.components = std::move(components);
  for (std::size_t c = 0; c < s.components.size(); ++c) {
    int sz = part_size(s.components[c]);
    std::vector<int> blk(sz);
    for (int a = 0; a < sz; ++a) {
      blk[a] = s.n + a;
      s.block_of.push_back(static_cast<int>(c));
      s.local.push_back(a);
    }
    s.n += sz;
    s.blocks.push_back(std::move(blk));
  }
  return s;
}

Supergraph assemble_supergraph(const Graph& head, const std::vector<Graph>& components) {
  std::vector<GraphPart> parts(components.begin(), components.end());
  return assemble_supergraph(GraphPart(head), std::move(parts), 2);
}

void relabel_uniform(Supergraph& s, Rng& rng) {
  std::vector<int> pi(s.n);
  std::iota(pi.begin(), pi.end(), 0);
  shuffle_range(pi.begin(), pi.end(), rng);
  std::vector<int> bo(s.n), lo(s.n);
  for (int v = 0; v < s.n; ++v) {
    bo[pi[v]] = s.block_of[v];
    lo[pi[v]] = s.local[v];
  }
  for (auto& b : s.blocks)
    for (int& v : b) v = pi[v];
  s.block_of = std::move(bo);
  s.local = std::move(lo);
}

std::shared_ptr<SupergraphSampler> SupergraphSampler::iterated(int d, int n_max) {
  if (d < 2) throw std::invalid_argument("SupergraphSampler: d >= 2");
  std::shared_ptr<SupergraphSampler> s(new SupergraphSampler());
  s->d_ = d;
  s->n_max_ = n_max;
  s->table_ = std::make_unique<GibbsTable>(gibbs_model_Od(d, n_max), n_max);
  s->cographs_ = shared_cograph_sampler(std::max(n_max, 1));
  if (d >= 3) s->inner_ = iterated(d - 1, n_max);
  return s;
}

std::shared_ptr<SupergraphSampler> SupergraphSampler::weighted(double q, int n_max) {
  std::shared_ptr<SupergraphSampler> s(new SupergraphSampler());
  s->weighted_ = true;
  s->n_max_ = n_max;
  s->table_ = std::make_unique<GibbsTable>(gibbs_model_weighted(BaseClass::Cograph, q, n_max), n_max);
  s->cographs_ = shared_cograph_sampler(std::max(n_max, 1));
  return s;
}

GraphPart SupergraphSampler::component(int size, Rng& rng) const {
  if (weighted_) return cographs_->sample(size, rng);
  // a marked vertex next to an O_{d-1} structure, no edges between them
  std::vector<GraphPart> parts;
  parts.emplace_back(Graph(1));
  if (d_ == 2) parts.emplace_back(cographs_->sample(size - 1, rng));
  else parts.emplace_back(std::make_shared<const Supergraph>(inner_->sample(size - 1, rng)));
  return std::make_shared<const Supergraph>(assemble_supergraph(GraphPart(Graph(2)), std::move(parts), d_ - 1));
}

Supergraph SupergraphSampler::sample(int n, Rng& rng) const {
  if (n < 1) throw std::invalid_argument("supergraph sample: n >= 1");
  if (n > n_max_) throw std::invalid_argument("supergraph sample: n above the sampler table");
  PartitionSample ps = table_->sample(n, rng);
  GraphPart head = cographs_->sample(ps.num_components, rng);
  std::vector<GraphPart> comps;
  comps.reserve(ps.sizes.size());
  for (int k : ps.sizes) comps.push_back(component(k, rng));
  Supergraph s = assemble_supergraph(std::move(head), std::move(comps), weighted_ ? 2 : d_);
  relabel_uniform(s, rng);
  return s;
}

namespace {

template <class Key, class Make>
std::shared_ptr<SupergraphSampler> cached(std::map<Key, std::shared_ptr<SupergraphSampler>>& m, const Key& key,
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

Supergraph sample_Od(int n, int d, Rng& rng) {
  static std::map<std::pair<int, int>, std::shared_ptr<SupergraphSampler>> m;
  return cached(m, std::make_pair(d, n), [&] { return SupergraphSampler::iterated(d, n); })->sample(n, rng);
}

Supergraph sample_weighted_cograph(int n, double q, Rng& rng) {
  static std::map<std::pair<double, int>, std::shared_ptr<SupergraphSampler>> m;
  return cached(m, std::make_pair(q, n), [&] { return SupergraphSampler::weighted(q, n); })->sample(n, rng);
}

}  // namespace pdl
