#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fairim {

/// Independent per-node seeding probabilities with expected seed-set size <= k.
struct NodeStrategy {
    std::vector<double> x; // each in [0,1]
    int k = 0;

    int n() const { return static_cast<int>(x.size()); }
    double mass() const;
    void validate() const; // sum(x) <= k + 1e-9, components in [0,1]
};

/// Sparse distribution over seed sets with expected size <= k.
struct SetStrategy {
    struct Entry {
        std::vector<int> set; // sorted, unique
        double probability;  // > 0
    };
    std::vector<Entry> support;
    int k = 0;

    double expected_size() const;
    double probability_mass() const;
    void validate() const; // mass = 1 +- 1e-9, expected size <= k + 1e-9

    // Marginal inclusion probabilities y_i = Pr[i in S].
    std::vector<double> marginals(int n) const;
};

NodeStrategy uniform_node_strategy(int n, int k);

// Independent Bernoulli draw per node; deterministic for a fixed seed.
std::vector<int> sample_from_node_strategy(const NodeStrategy& strategy,
                                           std::uint64_t rng_seed);

// Categorical draw over the support.
std::vector<int> sample_from_set_strategy(const SetStrategy& strategy,
                                          std::uint64_t rng_seed);

using Strategy = std::variant<NodeStrategy, SetStrategy>;

// JSON forms {kind:"node", k, x:[...]} and
// {kind:"set", k, support:[{set:[...], p:...},...]}.
std::string strategy_to_json(const Strategy& strategy);
Strategy strategy_from_json(const std::string& text);

} // namespace fairim
