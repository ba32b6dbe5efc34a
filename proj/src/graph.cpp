#include "fairim/graph.hpp"

#include <algorithm>
#include <unordered_set>

#include "fairim/errors.hpp"

namespace fairim {

DirectedWeightedGraph::DirectedWeightedGraph(int n, std::vector<Arc> arcs)
    : n_(n), arcs_(std::move(arcs)) {
    if (n < 0) throw ParameterError("node count must be non-negative");
    out_arcs_.assign(n_, {});
    in_arcs_.assign(n_, {});
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(arcs_.size());
    for (int a = 0; a < static_cast<int>(arcs_.size()); ++a) {
        const Arc& e = arcs_[a];
        if (e.src < 0 || e.src >= n_ || e.dst < 0 || e.dst >= n_)
            throw ParameterError("arc endpoint out of range: (" + std::to_string(e.src) +
                                 "," + std::to_string(e.dst) + ")");
        if (e.weight < 0.0 || e.weight > 1.0)
            throw ParameterError("arc weight outside [0,1]: " + std::to_string(e.weight));
        std::uint64_t key = static_cast<std::uint64_t>(e.src) << 32 |
                            static_cast<std::uint32_t>(e.dst);
        if (!seen.insert(key).second)
            throw ParameterError("duplicate arc (" + std::to_string(e.src) + "," +
                                 std::to_string(e.dst) + ")");
        out_arcs_[e.src].push_back(a);
        in_arcs_[e.dst].push_back(a);
    }
}

double DirectedWeightedGraph::in_weight_sum(int v) const {
    double s = 0.0;
    for (int a : in_arcs_[v]) s += arcs_[a].weight;
    return s;
}

CommunityStructure::CommunityStructure(std::vector<std::vector<int>> communities, int n)
    : communities_(std::move(communities)), n_(n) {
    if (communities_.empty()) throw ParameterError("community structure must have m >= 1");
    for (auto& c : communities_) {
        if (c.empty()) throw ParameterError("communities must be non-empty");
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        if (c.front() < 0 || c.back() >= n)
            throw ParameterError("community member id out of range");
    }
}

std::vector<int> CommunityStructure::member_union() const {
    std::vector<int> all;
    for (const auto& c : communities_) all.insert(all.end(), c.begin(), c.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

} // namespace fairim
