#pragma once

#include <cstdint>
#include <vector>

#include "fairim/graph.hpp"

namespace fairim {

/// Arc-weight assignment rule shared by generators and the edge-list loader.
struct WeightRule {
    enum class Kind { Uniform, Constant } kind = Kind::Constant;
    double lo = 0.0; // uniform bounds, subset of [0,1]
    double hi = 0.0;
    double value = 0.1; // constant

    static WeightRule uniform(double lo, double hi);
    static WeightRule constant(double c);
    double draw(class Rng& rng) const;
    void validate() const;
};

struct GeneratorSpec {
    enum class Kind { BarabasiAlbert, BlockStochastic, CorePeriphery } kind =
        Kind::BarabasiAlbert;

    // barabasi-albert
    int n = 0;
    int attachment = 2;

    // block-stochastic
    std::vector<int> block_sizes;
    double intra_p = 0.0;
    double inter_q = 0.0;

    // core-periphery
    int core_size = 0;
    int periphery_size = 0;
    double core_p = 0.0;
    double periphery_p = 0.0;

    WeightRule weights;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

// Undirected random models emit each undirected edge as two opposing arcs
// with equal weight. Deterministic given the spec's rng seed.
DirectedWeightedGraph generate_graph(const GeneratorSpec& spec);

struct CommunityRule {
    enum class Kind { Singleton, Bfs, RandomImbalanced } kind = Kind::Singleton;
    int m = 1;                      // bfs
    std::vector<int> sizes;         // random-imbalanced
};

CommunityStructure generate_communities(const DirectedWeightedGraph& graph,
                                        const CommunityRule& rule,
                                        std::uint64_t rng_seed);

} // namespace fairim
