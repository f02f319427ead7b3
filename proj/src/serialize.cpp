#include "pdl/serialize.hpp"

#include <stdexcept>

namespace pdl {

Json law_json(const Law& law, const std::string& kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["law"] = Json::object();
  for (const auto& [k, p] : law) j["law"][k] = p;
  return j;
}

Law law_from_json(const Json& j) {
  if (j.value("schema_version", 0) != kSchemaVersion) throw std::invalid_argument("law_from_json: schema_version");
  Law law;
  for (const auto& [k, p] : j.at("law").items()) law[k] = p.get<double>();
  return law;
}

Json graph_json(const Graph& g) {
  Json e = Json::array();
  for (auto [i, j] : g.edges()) e.push_back({i, j});
  return {{"schema_version", kSchemaVersion}, {"n", g.n()}, {"edges", e}};
}

Graph graph_from_json(const Json& j) {
  Graph g(j.at("n").get<int>());
  for (const auto& e : j.at("edges")) g.set_edge(e.at(0).get<int>(), e.at(1).get<int>());
  return g;
}

Json perm_json(const Permutation& p) {
  Json a = Json::array();
  for (int x : p.v) a.push_back(x + 1);
  return a;
}

Permutation perm_from_json(const Json& j) {
  std::vector<int> v;
  for (const auto& x : j) v.push_back(x.get<int>() - 1);
  Permutation p(v);
  if (!p.valid()) throw std::invalid_argument("perm_from_json: not a permutation");
  return p;
}

Json superperm_json(const Superpermutation& s) {
  Json blocks = Json::array();
  for (const auto& c : s.components) blocks.push_back(perm_json(c));
  return {{"schema_version", kSchemaVersion}, {"d", s.d}, {"head", perm_json(s.head)}, {"blocks", blocks},
          {"flat", perm_json(s.flat)}};
}

Json partition_json(const SetPartition& p) {
  Json blocks = Json::array();
  for (const auto& b : p.blocks) {
    Json a = Json::array();
    for (int x : b) a.push_back(x + 1);
    blocks.push_back(a);
  }
  return {{"schema_version", kSchemaVersion}, {"k", p.k}, {"blocks", blocks}, {"key", p.key()}};
}

}  // namespace pdl
