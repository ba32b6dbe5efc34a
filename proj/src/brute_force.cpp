#include "fairim/brute_force.hpp"

#include <cmath>
#include <cstdint>
#include <functional>

#include "fairim/errors.hpp"

namespace fairim {

namespace {

constexpr int kMaxArcs = 25;
constexpr int kMaxNodes = 64;
constexpr int kMaxStrategyNodes = 12;

void check_size(const DirectedWeightedGraph& graph, bool strategy_input) {
    if (graph.num_arcs() > kMaxArcs)
        throw SizeError("brute force limited to " + std::to_string(kMaxArcs) + " arcs");
    if (graph.num_nodes() > kMaxNodes)
        throw SizeError("brute force limited to " + std::to_string(kMaxNodes) + " nodes");
    if (strategy_input && graph.num_nodes() > kMaxStrategyNodes)
        throw SizeError("brute force over strategies limited to " +
                        std::to_string(kMaxStrategyNodes) + " nodes");
}

// reachers[v] = bitmask of nodes with a directed path to v (v included).
std::vector<std::uint64_t> reacher_masks(int n, const std::vector<Arc>& live) {
    std::vector<std::uint64_t> forward(n);
    for (int v = 0; v < n; ++v) forward[v] = 1ULL << v;
    // Fixpoint iteration; cheap at these sizes.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Arc& a : live) {
            std::uint64_t merged = forward[a.src] | forward[a.dst];
            if (merged != forward[a.src]) {
                forward[a.src] = merged;
                changed = true;
            }
        }
    }
    std::vector<std::uint64_t> reachers(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (forward[u] >> v & 1) reachers[v] |= 1ULL << u;
    return reachers;
}

// Calls visit(probability, reachers) for every triggering outcome.
void enumerate_outcomes(
    const DirectedWeightedGraph& graph, DiffusionModel model,
    const std::function<void(double, const std::vector<std::uint64_t>&)>& visit) {
    const int n = graph.num_nodes();
    if (model.kind == DiffusionModel::Kind::IndependentCascade) {
        const int m = graph.num_arcs();
        std::vector<Arc> live;
        live.reserve(m);
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            double prob = 1.0;
            live.clear();
            for (int a = 0; a < m; ++a) {
                const Arc& arc = graph.arc(a);
                if (mask >> a & 1) {
                    prob *= arc.weight;
                    live.push_back(arc);
                } else {
                    prob *= 1.0 - arc.weight;
                }
            }
            if (prob > 0.0) visit(prob, reacher_masks(n, live));
        }
    } else {
        // Mixed-radix counter over per-node choices: in-arc index or "none".
        for (int v = 0; v < n; ++v)
            if (graph.in_weight_sum(v) > 1.0 + 1e-9)
                throw ModelError("linear threshold requires in-weight sum <= 1; node " +
                                 std::to_string(v));
        std::vector<int> choice(n, 0);
        std::vector<Arc> live;
        for (;;) {
            double prob = 1.0;
            live.clear();
            for (int v = 0; v < n; ++v) {
                const auto& in = graph.in_arcs(v);
                if (choice[v] < static_cast<int>(in.size())) {
                    const Arc& arc = graph.arc(in[choice[v]]);
                    prob *= arc.weight;
                    live.push_back(arc);
                } else {
                    prob *= 1.0 - graph.in_weight_sum(v);
                }
            }
            if (prob > 0.0) visit(prob, reacher_masks(n, live));
            int v = 0;
            while (v < n) {
                if (++choice[v] <= static_cast<int>(graph.in_arcs(v).size())) break;
                choice[v++] = 0;
            }
            if (v == n) break;
        }
    }
}

std::uint64_t set_mask(const std::vector<int>& set, int n) {
    std::uint64_t mask = 0;
    for (int v : set) {
        if (v < 0 || v >= n) throw ParameterError("seed node out of range");
        mask |= 1ULL << v;
    }
    return mask;
}

} // namespace

std::vector<double> exact_sigma_set(const DirectedWeightedGraph& graph,
                                    DiffusionModel model, const std::vector<int>& seed_set) {
    check_size(graph, false);
    const int n = graph.num_nodes();
    const std::uint64_t seeds = set_mask(seed_set, n);
    std::vector<double> sigma(n, 0.0);
    enumerate_outcomes(graph, model, [&](double prob, const std::vector<std::uint64_t>& reachers) {
        for (int v = 0; v < n; ++v)
            if (reachers[v] & seeds) sigma[v] += prob;
    });
    return sigma;
}

std::vector<double> exact_sigma_node_strategy(const DirectedWeightedGraph& graph,
                                              DiffusionModel model,
                                              const std::vector<double>& x) {
    check_size(graph, true);
    const int n = graph.num_nodes();
    if (static_cast<int>(x.size()) != n) throw ParameterError("strategy length mismatch");
    std::vector<double> sigma(n, 0.0);
    // Seeds are independent, so conditional on the live-edge graph the reach
    // probability is 1 - prod over reachers of (1 - x_i); no set enumeration.
    enumerate_outcomes(graph, model, [&](double prob, const std::vector<std::uint64_t>& reachers) {
        for (int v = 0; v < n; ++v) {
            double miss = 1.0;
            for (int i = 0; i < n; ++i)
                if (reachers[v] >> i & 1) miss *= 1.0 - x[i];
            sigma[v] += prob * (1.0 - miss);
        }
    });
    return sigma;
}

std::vector<double> exact_sigma_set_strategy(const DirectedWeightedGraph& graph,
                                             DiffusionModel model, const SetStrategy& p) {
    check_size(graph, true);
    p.validate();
    const int n = graph.num_nodes();
    std::vector<std::uint64_t> masks;
    for (const auto& e : p.support) masks.push_back(set_mask(e.set, n));
    std::vector<double> sigma(n, 0.0);
    enumerate_outcomes(graph, model, [&](double prob, const std::vector<std::uint64_t>& reachers) {
        for (int v = 0; v < n; ++v) {
            double hit = 0.0;
            for (std::size_t s = 0; s < masks.size(); ++s)
                if (reachers[v] & masks[s]) hit += p.support[s].probability;
            sigma[v] += prob * hit;
        }
    });
    return sigma;
}

std::vector<double> exact_sigma_pairs(
    const DirectedWeightedGraph& graph, DiffusionModel model,
    const std::vector<std::pair<int, std::vector<int>>>& pairs) {
    check_size(graph, false);
    const int n = graph.num_nodes();
    std::vector<std::pair<int, std::uint64_t>> compiled;
    for (const auto& [v, set] : pairs) {
        if (v < 0 || v >= n) throw ParameterError("query node out of range");
        compiled.emplace_back(v, set_mask(set, n));
    }
    std::vector<double> out(pairs.size(), 0.0);
    enumerate_outcomes(graph, model, [&](double prob, const std::vector<std::uint64_t>& reachers) {
        for (std::size_t i = 0; i < compiled.size(); ++i)
            if (reachers[compiled[i].first] & compiled[i].second) out[i] += prob;
    });
    return out;
}

} // namespace fairim
