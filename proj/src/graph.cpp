#include "pdl/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pdl {

Graph::Graph(int n) : n_(n), words_((n + 63) / 64) {
  if (n < 0) throw std::invalid_argument("Graph: n >= 0");
  rows_.assign(static_cast<std::size_t>(n) * words_, 0);
}

void Graph::set_edge(int i, int j, bool on) {
  if (i == j) throw std::invalid_argument("Graph: loops are not allowed");
  auto bit = [&](int a, int b) -> std::uint64_t& { return rows_[a * words_ + (b >> 6)]; };
  std::uint64_t mi = std::uint64_t{1} << (j & 63), mj = std::uint64_t{1} << (i & 63);
  if (on) {
    bit(i, j) |= mi;
    bit(j, i) |= mj;
  } else {
    bit(i, j) &= ~mi;
    bit(j, i) &= ~mj;
  }
}

int Graph::edge_count() const {
  long s = 0;
  for (auto w : rows_) s += std::popcount(w);
  return static_cast<int>(s / 2);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (adj(i, j)) out.emplace_back(i, j);
  return out;
}

Graph Graph::induced(const std::vector<int>& vs) const {
  Graph g(static_cast<int>(vs.size()));
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (adj(vs[a], vs[b])) g.set_edge(static_cast<int>(a), static_cast<int>(b));
  return g;
}

Graph Graph::complement() const {
  Graph g(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (!adj(i, j)) g.set_edge(i, j);
  return g;
}

std::string Graph::key() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) s.push_back(adj(i, j) ? '1' : '0');
  return s;
}

Graph Graph::from_key(int n, const std::string& key) {
  if (key.size() != static_cast<std::size_t>(n) * (n - 1) / 2) throw std::invalid_argument("Graph::from_key: length");
  Graph g(n);
  std::size_t p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      char c = key[p++];
      if (c == '1') g.set_edge(i, j);
      else if (c != '0') throw std::invalid_argument("Graph::from_key: bad character");
    }
  return g;
}

std::string Graph::iso_key() const {
  if (n_ > 8) throw std::invalid_argument("iso_key: n <= 8");
  std::vector<int> p(n_);
  std::iota(p.begin(), p.end(), 0);
  std::string best;
  bool first = true;
  do {
    std::string s;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) s.push_back(adj(p[i], p[j]) ? '1' : '0');
    if (first || s < best) best = s;
    first = false;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

bool Graph::valid() const {
  for (int i = 0; i < n_; ++i) {
    if (adj(i, i)) return false;
    for (int j = i + 1; j < n_; ++j)
      if (adj(i, j) != adj(j, i)) return false;
  }
  return true;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_edge(i, j);
  return g;
}

Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1);
  return g;
}

Law iso_aggregate(const Law& labelled, int k) {
  Law out;
  for (const auto& [key, p] : labelled) out[Graph::from_key(k, key).iso_key()] += p;
  return out;
}

namespace {

bool maps_edges(const Graph& H, const Graph& G, const std::vector<int>& f) {
  for (auto [a, b] : H.edges())
    if (f[a] == f[b] || !G.adj(f[a], f[b])) return false;
  return true;
}

}  // namespace

double hom_density_exact(const Graph& H, const Graph& G, double budget) {
  int k = H.n(), n = G.n();
  if (n == 0) throw std::invalid_argument("hom_density: empty target graph");
  if (std::pow(static_cast<double>(n), k) > budget)
    throw std::length_error("hom_density_exact: n^k over budget, use hom_density_mc");
  std::vector<int> f(k, 0);
  long hits = 0, total = 0;
  for (;;) {
    ++total;
    if (maps_edges(H, G, f)) ++hits;
    int i = 0;
    while (i < k && ++f[i] == n) f[i++] = 0;
    if (i == k) break;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

Estimate hom_density_mc(const Graph& H, const Graph& G, std::size_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("hom_density_mc: samples > 0");
  if (G.n() == 0) throw std::invalid_argument("hom_density: empty target graph");
  std::vector<int> f(H.n());
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& x : f) x = static_cast<int>(uniform_index(G.n(), rng));
    if (maps_edges(H, G, f)) ++hits;
  }
  Estimate e;
  e.value = static_cast<double>(hits) / samples;
  e.se = std::sqrt(e.value * (1 - e.value) / samples);
  return e;
}

}  // namespace pdl
