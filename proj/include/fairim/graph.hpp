#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fairim {

struct Arc {
    int src;
    int dst;
    double weight; // in [0,1]
};

/// Immutable directed graph with per-arc weights in [0,1] and node ids 0..n-1.
/// Duplicate (src,dst) arcs are rejected at construction; self-loops are allowed.
class DirectedWeightedGraph {
public:
    DirectedWeightedGraph() = default;
    DirectedWeightedGraph(int n, std::vector<Arc> arcs);

    int num_nodes() const { return n_; }
    int num_arcs() const { return static_cast<int>(arcs_.size()); }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const Arc& arc(int a) const { return arcs_[a]; }

    // Arc ids incident to a node.
    const std::vector<int>& out_arcs(int v) const { return out_arcs_[v]; }
    const std::vector<int>& in_arcs(int v) const { return in_arcs_[v]; }

    int out_degree(int v) const { return static_cast<int>(out_arcs_[v].size()); }
    int in_degree(int v) const { return static_cast<int>(in_arcs_[v].size()); }

    double in_weight_sum(int v) const;

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_arcs_;
    std::vector<std::vector<int>> in_arcs_;
};

/// m >= 1 non-empty node subsets; may overlap, need not cover all nodes.
class CommunityStructure {
public:
    CommunityStructure() = default;
    explicit CommunityStructure(std::vector<std::vector<int>> communities, int n);

    int size() const { return static_cast<int>(communities_.size()); }
    int num_nodes() const { return n_; }
    const std::vector<int>& community(int c) const { return communities_[c]; }
    const std::vector<std::vector<int>>& communities() const { return communities_; }

    // Sorted union of all members.
    std::vector<int> member_union() const;

private:
    std::vector<std::vector<int>> communities_;
    int n_ = 0;
};

} // namespace fairim
