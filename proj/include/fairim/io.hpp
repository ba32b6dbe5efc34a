#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fairim/generators.hpp"
#include "fairim/graph.hpp"

namespace fairim {

/// Graph loaded from an edge list, with the original-id map kept for reporting
/// and for resolving community files that refer to original ids.
struct LoadedGraph {
    DirectedWeightedGraph graph;
    std::vector<std::int64_t> original_ids;              // dense id -> original id
    std::unordered_map<std::int64_t, int> id_to_dense;   // original id -> dense id
};

struct EdgeListOptions {
    bool undirected = false;
    WeightRule missing_weights = WeightRule::constant(0.1);
    std::uint64_t rng_seed = 0;
    bool largest_weakly_connected_component = false;
};

// Lines are "u v [w]" whitespace-separated; '#' starts a comment line.
// Ids are remapped to 0..n-1 in first-seen order.
LoadedGraph load_edge_list(const std::string& path, const EdgeListOptions& opts);

enum class CommunityColumnOrder { CommunityFirst, NodeFirst };

// Two integer columns per line. Node ids are resolved through the loaded
// graph's id map (identity when `loaded.original_ids` covers 0..n-1).
// Empty communities are dropped; nodes absent from the file are in none.
// With skip_unknown_nodes, ids outside the map are ignored (for graphs
// restricted to their largest weakly connected component).
CommunityStructure load_communities(const std::string& path, const LoadedGraph& loaded,
                                    CommunityColumnOrder order,
                                    bool skip_unknown_nodes = false);

// JSON fixture {n, arcs:[[u,v,w]...], communities:[[...],...]}.
std::string instance_to_json(const DirectedWeightedGraph& graph,
                             const CommunityStructure* communities);
DirectedWeightedGraph graph_from_json(const std::string& text);
std::optional<CommunityStructure> communities_from_json(const std::string& text, int n);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace fairim
