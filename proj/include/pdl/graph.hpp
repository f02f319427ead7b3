#ifndef PDL_GRAPH_HPP
#define PDL_GRAPH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pdl/rng.hpp"
#include "pdl/stats.hpp"

namespace pdl {

// Simple graph on 0..n-1, adjacency as packed bit rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  bool adj(int i, int j) const { return (rows_[i * words_ + (j >> 6)] >> (j & 63)) & 1u; }
  void set_edge(int i, int j, bool on = true);

  int edge_count() const;
  std::vector<std::pair<int, int>> edges() const;
  Graph induced(const std::vector<int>& vs) const;
  Graph complement() const;

  // upper triangle, row-major: (0,1),(0,2),...,(1,2),...
  std::string key() const;
  static Graph from_key(int n, const std::string& key);
  // least key over all vertex relabellings, n <= 8
  std::string iso_key() const;

  bool valid() const;
  bool operator==(const Graph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> rows_;
};

Graph complete_graph(int n);
Graph path_graph(int n);

// Aggregates a labelled law on k vertices into isomorphism classes.
Law iso_aggregate(const Law& labelled, int k);

double hom_density_exact(const Graph& H, const Graph& G, double budget = 1e8);

struct Estimate {
  double value = 0;
  double se = 0;
};

Estimate hom_density_mc(const Graph& H, const Graph& G, std::size_t samples, Rng& rng);

}  // namespace pdl

#endif
