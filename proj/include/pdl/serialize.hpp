#ifndef PDL_SERIALIZE_HPP
#define PDL_SERIALIZE_HPP

#include <json.hpp>

#include "pdl/graph.hpp"
#include "pdl/pd.hpp"
#include "pdl/perm.hpp"
#include "pdl/stats.hpp"
#include "pdl/superperm.hpp"

namespace pdl {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

// {"schema_version", "kind", "law": {key: p}}; `kind` names the key format.
Json law_json(const Law& law, const std::string& kind);
Law law_from_json(const Json& j);

Json graph_json(const Graph& g);  // {"n", "edges": [[i, j], ...]}, 0-based
Graph graph_from_json(const Json& j);

Json perm_json(const Permutation& p);  // 1-based one-line notation
Permutation perm_from_json(const Json& j);

Json superperm_json(const Superpermutation& s);  // {"head", "blocks": [...]}
Json partition_json(const SetPartition& p);      // 1-based blocks

}  // namespace pdl

#endif
