#pragma once

#include <vector>

#include "fairim/diffusion.hpp"
#include "fairim/graph.hpp"

namespace fairim {

/// Nested greedy prefix S_1 c S_2 c ... c S_k with the objective value of each
/// prefix. Coverage counts refer to the sample's indexed nodes and describe
/// the final set.
struct GreedyTrace {
    std::vector<int> nodes;          // chosen node per step
    std::vector<double> values;      // sigma~^w(S_i)
    std::vector<double> gains;       // marginal gain per step
    std::vector<int> coverage_counts; // per indexed node: #samples covered by S_k

    std::vector<int> prefix(int i) const; // sorted S_i
    std::vector<int> final_set() const { return prefix(static_cast<int>(nodes.size())); }
    void check_invariants() const; // sizes, monotone values, non-increasing gains
};

// w_v = sum over communities containing v of z_C / |C|; nodes in no community
// get zero.
std::vector<double> weights_from_community_duals(const std::vector<double>& z,
                                                 const CommunityStructure& communities);

// Lazy greedy (priority queue with stale-gain re-evaluation) maximizing
// sigma~^w(S) = sum_v w_v sigma~_v(S) exactly with respect to the sample.
// Ties break toward the lowest node id.
GreedyTrace greedy_weighted_im(const LiveEdgeSample& sample, const std::vector<double>& weights,
                               int k);

// Full re-evaluation variant; the oracle-equivalence reference for the lazy one.
GreedyTrace greedy_weighted_im_naive(const LiveEdgeSample& sample,
                                     const std::vector<double>& weights, int k);

enum class DegreeTie { Out, In, Total };

// Iteratively adds the node maximizing the minimum community value; ties break
// by maximum degree (out-degree by default), then lowest id.
std::vector<int> greedy_maximin(const DirectedWeightedGraph& graph,
                                const LiveEdgeSample& sample,
                                const CommunityStructure& communities, int k,
                                DegreeTie tie = DegreeTie::Out);

// Seeds the maximum-degree node, then k-1 times the node with the lowest
// current reach probability (ties toward the lowest id).
std::vector<int> myopic_fish(const DirectedWeightedGraph& graph, const LiveEdgeSample& sample,
                             const CommunityStructure& communities, int k,
                             DegreeTie tie = DegreeTie::Out);

} // namespace fairim
