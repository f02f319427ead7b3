#ifndef PDL_SUPERGRAPH_HPP
#define PDL_SUPERGRAPH_HPP

#include <memory>
#include <variant>
#include <vector>

#include "pdl/cotree.hpp"
#include "pdl/gibbs.hpp"
#include "pdl/graph.hpp"

namespace pdl {

struct Supergraph;

// A graph given either explicitly, as a cotree, or as a nested supergraph.
// Adjacency is answered without flattening.
using GraphPart = std::variant<Graph, SignedLeafTree, std::shared_ptr<const Supergraph>>;

int part_size(const GraphPart& p);
bool part_adj(const GraphPart& p, int i, int j);
Graph part_flatten(const GraphPart& p);

struct Supergraph {
  int d = 1;
  int n = 0;
  GraphPart head;
  std::vector<GraphPart> components;
  std::vector<std::vector<int>> blocks;  // blocks[i] spans component i, local order
  std::vector<int> block_of;             // vertex -> head vertex
  std::vector<int> local;                // vertex -> index inside its component

  bool adjacent(int i, int j) const;
  Graph flatten() const;
  std::vector<int> component_sizes() const;
};

// Blocks are consecutive vertex ranges in component order.
Supergraph assemble_supergraph(const Graph& head, const std::vector<Graph>& components);
Supergraph assemble_supergraph(GraphPart head, std::vector<GraphPart> components, int d = 2);
// Relabels vertices by a uniform bijection of [n].
void relabel_uniform(Supergraph& s, Rng& rng);

// Tables for O_d (d >= 2) or O^<q> up to size n_max; shared read-only.
class SupergraphSampler {
 public:
  static std::shared_ptr<SupergraphSampler> iterated(int d, int n_max);
  static std::shared_ptr<SupergraphSampler> weighted(double q, int n_max);

  Supergraph sample(int n, Rng& rng) const;
  const GibbsTable& table() const { return *table_; }
  int n_max() const { return n_max_; }

 private:
  SupergraphSampler() = default;
  GraphPart component(int size, Rng& rng) const;

  int d_ = 2;
  bool weighted_ = false;
  int n_max_ = 0;
  std::unique_ptr<GibbsTable> table_;
  std::shared_ptr<const CographSampler> cographs_;
  std::shared_ptr<SupergraphSampler> inner_;  // O_{d-1} when d >= 3
};

Supergraph sample_Od(int n, int d, Rng& rng);
Supergraph sample_weighted_cograph(int n, double q, Rng& rng);

}  // namespace pdl

#endif
