#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fairim/diffusion.hpp"
#include "fairim/graph.hpp"
#include "fairim/strategies.hpp"

namespace fairim {

/// Multiplicative-weights configuration. The default iteration count comes
/// from the covering-framework bound with the minimum value replaced by its
/// lower bound k/n: N = ceil(eta^-2 * ln m * n / k), capped by max_iterations.
/// The convergence probe stops early once the running objective stabilizes;
/// set tolerance to 0 to always run the full budget.
struct MWConfig {
    double eta = 0.1; // in (0,1)
    int max_iterations = 2000;
    std::optional<int> iterations; // explicit N, bypasses the bound
    int probe_every = 10;
    int window = 5;          // probes compared by the early stop
    double tolerance = 1e-3; // relative stability threshold
    int min_iterations = 100;
    std::uint64_t rng_seed = 0; // provenance only; the loop is deterministic

    void validate() const;
    int planned_iterations(int n, int m, int k) const;
};

/// Per-run diagnostics: final community weights, the oracle set of every
/// iteration, and the running objective probes (iteration, min community
/// value of the averaged strategy so far).
struct MWState {
    std::vector<double> duals;
    std::vector<std::vector<int>> oracle_sets;
    std::vector<std::pair<int, double>> objective_probes;
    int iterations_run = 0;
    std::uint64_t rng_seed = 0;
};

struct SetSolveResult {
    SetStrategy strategy;
    MWState state;
};

struct NodeSolveResult {
    NodeStrategy strategy;
    MWState state;
};

// Covering-style multiplicative weights for the set-based maximin problem:
// each iteration aggregates community weights into node weights, asks the
// greedy oracle for a size-k set, then exponentially downweights covered
// communities. The output distribution is uniform over the oracle sets with
// duplicates merged.
SetSolveResult solve_set_based(const LiveEdgeSample& sample,
                               const CommunityStructure& communities, int k,
                               const MWConfig& cfg);

// Same loop; the output is the arithmetic mean of the oracle sets' indicator
// vectors, a feasible node strategy.
NodeSolveResult solve_node_based(const LiveEdgeSample& sample,
                                 const CommunityStructure& communities, int k,
                                 const MWConfig& cfg);

// Truncated-linear surrogate lambda_C(x) computed exactly on the sample:
// lambda_v = (1/T) sum_t min{1, sum of x_i over sources reaching v}.
std::vector<double> lambda_value(const LiveEdgeSample& sample, const std::vector<double>& x,
                                 const CommunityStructure& communities);

} // namespace fairim
