#include "fairim/oracle_greedy.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "fairim/errors.hpp"

namespace fairim {

std::vector<int> GreedyTrace::prefix(int i) const {
    std::vector<int> s(nodes.begin(), nodes.begin() + i);
    std::sort(s.begin(), s.end());
    return s;
}

void GreedyTrace::check_invariants() const {
    if (values.size() != nodes.size() || gains.size() != nodes.size())
        throw ModelError("greedy trace: inconsistent lengths");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i > 0 && values[i] < values[i - 1] - 1e-9)
            throw ModelError("greedy trace: objective decreased");
        if (i > 0 && gains[i] > gains[i - 1] + 1e-9)
            throw ModelError("greedy trace: marginal gain increased");
    }
    std::vector<int> s = final_set();
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw ModelError("greedy trace: repeated node");
}

std::vector<double> weights_from_community_duals(const std::vector<double>& z,
                                                 const CommunityStructure& communities) {
    if (static_cast<int>(z.size()) != communities.size())
        throw ParameterError("dual vector length must equal the number of communities");
    std::vector<double> weights(communities.num_nodes(), 0.0);
    for (int c = 0; c < communities.size(); ++c) {
        if (z[c] < 0.0) throw ParameterError("duals must be non-negative");
        double share = z[c] / communities.community(c).size();
        for (int v : communities.community(c)) weights[v] += share;
    }
    return weights;
}

namespace {

// Shared gain machinery: the objective is weighted coverage of (sample,
// indexed node) pairs. `covered` holds one flag per (t, indexed position).
struct CoverageState {
    const LiveEdgeSample& sample;
    std::vector<double> pos_weight; // weight of each indexed position
    std::vector<char> covered;      // T x I flags
    double covered_weight = 0.0;

    CoverageState(const LiveEdgeSample& s, const std::vector<double>& node_weights)
        : sample(s), covered(static_cast<std::size_t>(s.num_samples()) * s.num_indexed(), 0) {
        pos_weight.resize(s.num_indexed());
        for (int j = 0; j < s.num_indexed(); ++j)
            pos_weight[j] = node_weights[s.indexed_nodes()[j]];
    }

    double gain(int u) const {
        const int I = sample.num_indexed();
        double g = 0.0;
        for (int t = 0; t < sample.num_samples(); ++t) {
            const std::size_t base = static_cast<std::size_t>(t) * I;
            for (int j : sample.covers(t, u))
                if (!covered[base + j]) g += pos_weight[j];
        }
        return g;
    }

    void add(int u) {
        const int I = sample.num_indexed();
        for (int t = 0; t < sample.num_samples(); ++t) {
            const std::size_t base = static_cast<std::size_t>(t) * I;
            for (int j : sample.covers(t, u))
                if (!covered[base + j]) {
                    covered[base + j] = 1;
                    covered_weight += pos_weight[j];
                }
        }
    }

    std::vector<int> coverage_counts() const {
        const int I = sample.num_indexed();
        std::vector<int> counts(I, 0);
        for (int t = 0; t < sample.num_samples(); ++t)
            for (int j = 0; j < I; ++j)
                counts[j] += covered[static_cast<std::size_t>(t) * I + j];
        return counts;
    }
};

void check_weights(const LiveEdgeSample& sample, const std::vector<double>& weights, int k) {
    if (static_cast<int>(weights.size()) != sample.num_nodes())
        throw ParameterError("weight vector length mismatch");
    for (double w : weights)
        if (w < 0.0) throw ParameterError("node weights must be non-negative");
    if (k < 1 || k > sample.num_nodes())
        throw ParameterError("budget k must lie in [1, n]");
}

GreedyTrace finish_trace(const CoverageState& state, std::vector<int> nodes,
                         std::vector<double> gains) {
    GreedyTrace trace;
    trace.nodes = std::move(nodes);
    trace.gains = std::move(gains);
    const double T = state.sample.num_samples();
    for (double& g : trace.gains) g /= T;
    double run = 0.0;
    for (double g : trace.gains) {
        run += g;
        trace.values.push_back(run);
    }
    trace.coverage_counts = state.coverage_counts();
    return trace;
}

} // namespace

GreedyTrace greedy_weighted_im(const LiveEdgeSample& sample, const std::vector<double>& weights,
                               int k) {
    check_weights(sample, weights, k);
    const int n = sample.num_nodes();
    CoverageState state(sample, weights);

    // CELF: (gain, node) max-heap with lowest-id tie break; entries refreshed
    // when stale. Refreshed gains only shrink, so a fresh top is the argmax.
    struct Entry {
        double gain;
        int node;
        int round;
    };
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.gain != b.gain) return a.gain < b.gain;
        return a.node > b.node;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);

    std::vector<double> init(n);
#pragma omp parallel for schedule(dynamic)
    for (int u = 0; u < n; ++u) init[u] = state.gain(u);
    for (int u = 0; u < n; ++u) heap.push({init[u], u, 0});

    std::vector<int> chosen;
    std::vector<double> gains;
    for (int round = 1; round <= k; ++round) {
        for (;;) {
            Entry top = heap.top();
            heap.pop();
            if (top.round == round - 1) {
                chosen.push_back(top.node);
                gains.push_back(top.gain);
                state.add(top.node);
                break;
            }
            top.gain = state.gain(top.node);
            top.round = round - 1;
            heap.push(top);
        }
    }
    return finish_trace(state, std::move(chosen), std::move(gains));
}

GreedyTrace greedy_weighted_im_naive(const LiveEdgeSample& sample,
                                     const std::vector<double>& weights, int k) {
    check_weights(sample, weights, k);
    const int n = sample.num_nodes();
    CoverageState state(sample, weights);
    std::vector<char> selected(n, 0);
    std::vector<int> chosen;
    std::vector<double> gains;
    for (int round = 0; round < k; ++round) {
        int best = -1;
        double best_gain = -1.0;
        for (int u = 0; u < n; ++u) {
            if (selected[u]) continue;
            double g = state.gain(u);
            if (g > best_gain) {
                best_gain = g;
                best = u;
            }
        }
        selected[best] = 1;
        chosen.push_back(best);
        gains.push_back(best_gain);
        state.add(best);
    }
    return finish_trace(state, std::move(chosen), std::move(gains));
}

namespace {

int degree_of(const DirectedWeightedGraph& graph, int v, DegreeTie tie) {
    switch (tie) {
    case DegreeTie::Out: return graph.out_degree(v);
    case DegreeTie::In: return graph.in_degree(v);
    case DegreeTie::Total: return graph.out_degree(v) + graph.in_degree(v);
    }
    return graph.out_degree(v);
}

} // namespace

std::vector<int> greedy_maximin(const DirectedWeightedGraph& graph,
                                const LiveEdgeSample& sample,
                                const CommunityStructure& communities, int k,
                                DegreeTie tie) {
    const int n = sample.num_nodes();
    const int T = sample.num_samples();
    const int m = communities.size();
    if (k < 1 || k > n) throw ParameterError("budget k must lie in [1, n]");

    // Communities containing each indexed position.
    std::vector<std::vector<int>> comms_of(sample.num_indexed());
    for (int c = 0; c < m; ++c)
        for (int v : communities.community(c)) {
            int j = sample.index_of(v);
            if (j < 0)
                throw ModelError("community member " + std::to_string(v) + " is not indexed");
            comms_of[j].push_back(c);
        }

    const int I = sample.num_indexed();
    std::vector<char> covered(static_cast<std::size_t>(T) * I, 0);
    std::vector<long long> comm_covered(m, 0); // covered (t, member) pairs per community
    std::vector<long long> delta(m, 0);
    std::vector<char> selected(n, 0);
    std::vector<int> result;

    for (int round = 0; round < k; ++round) {
        int best = -1;
        double best_value = -1.0;
        for (int u = 0; u < n; ++u) {
            if (selected[u]) continue;
            std::vector<int> touched;
            for (int t = 0; t < T; ++t) {
                const std::size_t base = static_cast<std::size_t>(t) * I;
                for (int j : sample.covers(t, u))
                    if (!covered[base + j])
                        for (int c : comms_of[j]) {
                            if (delta[c] == 0) touched.push_back(c);
                            ++delta[c];
                        }
            }
            double value = 2.0; // above any probability
            for (int c = 0; c < m; ++c) {
                double val = static_cast<double>(comm_covered[c] + delta[c]) /
                             (static_cast<double>(T) * communities.community(c).size());
                value = std::min(value, val);
            }
            for (int c : touched) delta[c] = 0;

            bool better = false;
            if (value > best_value) {
                better = true;
            } else if (value == best_value && best >= 0) {
                int du = degree_of(graph, u, tie), db = degree_of(graph, best, tie);
                better = du > db; // equal degree keeps the earlier (lower) id
            }
            if (better) {
                best_value = value;
                best = u;
            }
        }
        selected[best] = 1;
        result.push_back(best);
        for (int t = 0; t < T; ++t) {
            const std::size_t base = static_cast<std::size_t>(t) * I;
            for (int j : sample.covers(t, best))
                if (!covered[base + j]) {
                    covered[base + j] = 1;
                    for (int c : comms_of[j]) ++comm_covered[c];
                }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<int> myopic_fish(const DirectedWeightedGraph& graph, const LiveEdgeSample& sample,
                             const CommunityStructure& /*communities*/, int k,
                             DegreeTie tie) {
    const int n = sample.num_nodes();
    const int T = sample.num_samples();
    if (k < 1 || k > n) throw ParameterError("budget k must lie in [1, n]");
    if (!sample.full_index()) throw ModelError("myopic requires a fully indexed sample");

    int first = 0;
    for (int v = 1; v < n; ++v)
        if (degree_of(graph, v, tie) > degree_of(graph, first, tie)) first = v;

    std::vector<char> selected(n, 0);
    std::vector<int> reach_count(n, 0); // #samples in which the node is reached
    std::vector<char> covered(static_cast<std::size_t>(T) * n, 0);
    std::vector<int> result;

    auto add = [&](int u) {
        selected[u] = 1;
        result.push_back(u);
        for (int t = 0; t < T; ++t) {
            const std::size_t base = static_cast<std::size_t>(t) * n;
            for (int j : sample.covers(t, u))
                if (!covered[base + j]) {
                    covered[base + j] = 1;
                    ++reach_count[sample.indexed_nodes()[j]];
                }
        }
    };
    add(first);
    for (int round = 1; round < k; ++round) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!selected[v] && (best < 0 || reach_count[v] < reach_count[best])) best = v;
        add(best);
    }
    std::sort(result.begin(), result.end());
    return result;
}

} // namespace fairim
