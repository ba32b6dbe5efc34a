#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fairim/graph.hpp"

namespace fairim {

struct DiffusionModel {
    enum class Kind { IndependentCascade, LinearThreshold } kind =
        Kind::IndependentCascade;

    static DiffusionModel ic() { return {Kind::IndependentCascade}; }
    static DiffusionModel lt() { return {Kind::LinearThreshold}; }
};

/// Hoeffding-calibrated sample count: T = ceil(multiplier * eps^-2 * (n + ln n + ln 1/delta)).
/// Natural logarithms. The multiplier selects between the one-function and the
/// composed (eps/2 split) bound; callers default to 1.
struct EstimatorParams {
    double epsilon = 0.1;  // in (0,1)
    double delta = 0.1;    // in (0,1/2)
    double multiplier = 1.0;
    std::int64_t override_T = 0; // > 0 bypasses the formula
};

std::int64_t required_samples(const EstimatorParams& params, int n);

namespace detail {
struct Csr {
    std::vector<int> offsets; // rows + 1
    std::vector<int> items;
    std::span<const int> row(int r) const {
        return {items.data() + offsets[r],
                static_cast<std::size_t>(offsets[r + 1] - offsets[r])};
    }
};
} // namespace detail

/// T live-edge graphs sampled under the Triggering model, with a reachability
/// index over the "indexed" nodes: for each sample t and indexed node v, the
/// sorted set of nodes that reach v in G_{L_t}, plus its transpose (which
/// indexed nodes a given node covers). By default every node is indexed.
class LiveEdgeSample {
public:
    int num_nodes() const { return n_; }
    int num_samples() const { return T_; }
    std::uint64_t seed() const { return seed_; }
    DiffusionModel model() const { return model_; }

    bool full_index() const { return full_index_; }
    const std::vector<int>& indexed_nodes() const { return indexed_nodes_; }
    int num_indexed() const { return static_cast<int>(indexed_nodes_.size()); }
    int index_of(int v) const { return node_to_index_[v]; } // -1 if not indexed

    std::span<const int> live_out(int t, int u) const { return samples_[t].live_out.row(u); }
    int num_live_arcs(int t) const {
        return static_cast<int>(samples_[t].live_out.items.size());
    }

    // Sorted node ids that reach the indexed node at position j in sample t.
    std::span<const int> sources_reaching_pos(int t, int j) const {
        return samples_[t].reaching.row(j);
    }
    std::span<const int> sources_reaching(int t, int v) const;

    // Indexed positions covered by node u in sample t.
    std::span<const int> covers(int t, int u) const { return samples_[t].covers.row(u); }

    friend LiveEdgeSample sample_live_edges(const DirectedWeightedGraph&, DiffusionModel,
                                            int, std::uint64_t, const std::vector<int>*);
    friend LiveEdgeSample sample_from_live_arcs(int, DiffusionModel, std::uint64_t,
                                                const std::vector<std::vector<Arc>>&,
                                                const std::vector<int>*);

    std::string to_json() const;
    static LiveEdgeSample from_json(const std::string& text);

private:
    struct PerSample {
        detail::Csr live_out;  // node -> live out-neighbors
        detail::Csr reaching;  // indexed position -> sorted source node ids
        detail::Csr covers;    // node -> indexed positions it reaches
        std::vector<std::pair<int, int>> live_arcs; // (u,v), sample order
    };

    int n_ = 0;
    int T_ = 0;
    std::uint64_t seed_ = 0;
    DiffusionModel model_;
    bool full_index_ = true;
    std::vector<int> indexed_nodes_;
    std::vector<int> node_to_index_;
    std::vector<PerSample> samples_;
};

// Samples T live-edge graphs. IC: each arc live independently with its weight.
// LT: each node keeps at most one in-arc (arc (u,v) with probability w_uv,
// none with the remaining mass); the per-node in-weight condition is checked
// here. Per-sample RNG streams derive from (rng_seed, sample index), so the
// result is identical for any thread count. index_nodes == nullptr indexes
// every node.
LiveEdgeSample sample_live_edges(const DirectedWeightedGraph& graph, DiffusionModel model,
                                 int T, std::uint64_t rng_seed,
                                 const std::vector<int>* index_nodes = nullptr);

struct SigmaVector {
    std::vector<double> per_node; // sigma~_v, all in [0,1]
    double total = 0.0;           // sum over nodes, in [0,n]
};

// Empirical reach probabilities of a fixed seed set (forward search per sample).
SigmaVector sigma_set(const LiveEdgeSample& sample, const std::vector<int>& seed_set);

// Exact expectation over S~x conditional on the sampled live-edge graphs:
// sigma~_v(x) = (1/T) sum_t [1 - prod_{i reaches v in L_t} (1 - x_i)].
// Requires a full index.
SigmaVector sigma_node_strategy(const LiveEdgeSample& sample, const std::vector<double>& x);

class SetStrategy;
SigmaVector sigma_set_strategy(const LiveEdgeSample& sample, const SetStrategy& p);

// sigma~_C = mean of sigma~_v over community members.
std::vector<double> community_value(const std::vector<double>& per_node,
                                    const CommunityStructure& communities);

} // namespace fairim
