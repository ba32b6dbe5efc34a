#pragma once

#include <utility>
#include <vector>

#include "fairim/diffusion.hpp"
#include "fairim/graph.hpp"
#include "fairim/strategies.hpp"

namespace fairim {

// Exact reach probabilities by enumerating every triggering outcome (IC: all
// 2^|A| arc subsets; LT: all per-node in-arc choices), each weighted by its
// probability. Test oracle for the sampled estimators; limited to at most
// 25 arcs and 64 nodes (12 nodes for strategy inputs).

std::vector<double> exact_sigma_set(const DirectedWeightedGraph& graph,
                                    DiffusionModel model, const std::vector<int>& seed_set);

std::vector<double> exact_sigma_node_strategy(const DirectedWeightedGraph& graph,
                                              DiffusionModel model,
                                              const std::vector<double>& x);

std::vector<double> exact_sigma_set_strategy(const DirectedWeightedGraph& graph,
                                             DiffusionModel model, const SetStrategy& p);

// Batched sigma_v(S) for many (v, S) pairs in a single sweep over outcomes.
std::vector<double> exact_sigma_pairs(
    const DirectedWeightedGraph& graph, DiffusionModel model,
    const std::vector<std::pair<int, std::vector<int>>>& pairs);

} // namespace fairim
