#include "fairim/generators.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "fairim/errors.hpp"
#include "fairim/rng.hpp"

namespace fairim {

WeightRule WeightRule::uniform(double lo, double hi) {
    WeightRule r;
    r.kind = Kind::Uniform;
    r.lo = lo;
    r.hi = hi;
    r.validate();
    return r;
}

WeightRule WeightRule::constant(double c) {
    WeightRule r;
    r.kind = Kind::Constant;
    r.value = c;
    r.validate();
    return r;
}

double WeightRule::draw(Rng& rng) const {
    return kind == Kind::Uniform ? rng.next_in(lo, hi) : value;
}

void WeightRule::validate() const {
    if (kind == Kind::Uniform) {
        if (lo < 0.0 || hi > 1.0 || lo > hi)
            throw ParameterError("uniform weight bounds must satisfy 0 <= lo <= hi <= 1");
    } else if (value < 0.0 || value > 1.0) {
        throw ParameterError("constant weight must lie in [0,1]");
    }
}

void GeneratorSpec::validate() const {
    weights.validate();
    auto check_prob = [](double p, const char* name) {
        if (p < 0.0 || p > 1.0)
            throw ParameterError(std::string(name) + " must lie in [0,1]");
    };
    switch (kind) {
    case Kind::BarabasiAlbert:
        if (n <= 0) throw ParameterError("barabasi-albert: n must be positive");
        if (attachment < 1 || attachment >= n)
            throw ParameterError("barabasi-albert: attachment must be in [1, n)");
        break;
    case Kind::BlockStochastic:
        if (block_sizes.empty()) throw ParameterError("block-stochastic: no block sizes");
        for (int s : block_sizes)
            if (s <= 0) throw ParameterError("block-stochastic: block sizes must be positive");
        check_prob(intra_p, "intra-probability");
        check_prob(inter_q, "inter-probability");
        break;
    case Kind::CorePeriphery:
        if (core_size <= 0 || periphery_size <= 0)
            throw ParameterError("core-periphery: |C| and |D| must be positive");
        check_prob(core_p, "p_C");
        check_prob(periphery_p, "p_D");
        check_prob(inter_q, "q");
        break;
    }
}

namespace {

// Emits the undirected edge {u,v} as two opposing arcs of equal weight.
void add_undirected(std::vector<Arc>& arcs, int u, int v, double w) {
    arcs.push_back({u, v, w});
    arcs.push_back({v, u, w});
}

DirectedWeightedGraph generate_barabasi_albert(const GeneratorSpec& spec) {
    Rng rng(spec.rng_seed);
    const int a = spec.attachment;
    std::vector<Arc> arcs;
    // Endpoint multiset; picking a uniform element realizes degree-proportional
    // attachment. The first `a` nodes start isolated; node `a` connects to all
    // of them uniformly (every earlier node still has degree zero).
    std::vector<int> endpoints;
    for (int v = a; v < spec.n; ++v) {
        std::vector<int> targets;
        while (static_cast<int>(targets.size()) < std::min(a, v)) {
            int cand;
            if (endpoints.empty())
                cand = static_cast<int>(rng.next_below(v));
            else
                cand = endpoints[rng.next_below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), cand) == targets.end())
                targets.push_back(cand);
        }
        for (int t : targets) {
            add_undirected(arcs, v, t, spec.weights.draw(rng));
            endpoints.push_back(v);
            endpoints.push_back(t);
        }
    }
    return DirectedWeightedGraph(spec.n, std::move(arcs));
}

DirectedWeightedGraph generate_blocks(const std::vector<int>& sizes,
                                      const std::vector<double>& intra,
                                      double inter, const WeightRule& weights,
                                      std::uint64_t seed) {
    const int n = std::accumulate(sizes.begin(), sizes.end(), 0);
    std::vector<int> block_of(n);
    int pos = 0;
    for (int b = 0; b < static_cast<int>(sizes.size()); ++b)
        for (int i = 0; i < sizes[b]; ++i) block_of[pos++] = b;

    Rng rng(seed);
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            double p = block_of[u] == block_of[v] ? intra[block_of[u]] : inter;
            if (rng.next_double() < p)
                add_undirected(arcs, u, v, weights.draw(rng));
        }
    }
    return DirectedWeightedGraph(n, std::move(arcs));
}

} // namespace

DirectedWeightedGraph generate_graph(const GeneratorSpec& spec) {
    spec.validate();
    switch (spec.kind) {
    case GeneratorSpec::Kind::BarabasiAlbert:
        return generate_barabasi_albert(spec);
    case GeneratorSpec::Kind::BlockStochastic: {
        std::vector<double> intra(spec.block_sizes.size(), spec.intra_p);
        return generate_blocks(spec.block_sizes, intra, spec.inter_q, spec.weights,
                               spec.rng_seed);
    }
    case GeneratorSpec::Kind::CorePeriphery:
        return generate_blocks({spec.core_size, spec.periphery_size},
                               {spec.core_p, spec.periphery_p}, spec.inter_q,
                               spec.weights, spec.rng_seed);
    }
    throw ParameterError("unknown generator kind");
}

CommunityStructure generate_communities(const DirectedWeightedGraph& graph,
                                        const CommunityRule& rule,
                                        std::uint64_t rng_seed) {
    const int n = graph.num_nodes();
    switch (rule.kind) {
    case CommunityRule::Kind::Singleton: {
        std::vector<std::vector<int>> comms(n);
        for (int v = 0; v < n; ++v) comms[v] = {v};
        return CommunityStructure(std::move(comms), n);
    }
    case CommunityRule::Kind::Bfs: {
        const int m = rule.m;
        if (m < 1 || m > n) throw ParameterError("bfs communities: m must be in [1, n]");
        const int target = n / m;
        Rng rng(rng_seed);
        std::vector<bool> assigned(n, false);
        auto pick_unassigned = [&]() {
            // uniform over remaining unassigned nodes
            std::vector<int> pool;
            for (int v = 0; v < n; ++v)
                if (!assigned[v]) pool.push_back(v);
            return pool[rng.next_below(pool.size())];
        };
        std::vector<std::vector<int>> comms(m);
        for (int c = 0; c < m; ++c) {
            std::queue<int> frontier;
            auto take = [&](int v) {
                assigned[v] = true;
                comms[c].push_back(v);
                frontier.push(v);
            };
            take(pick_unassigned());
            while (static_cast<int>(comms[c].size()) < target) {
                if (frontier.empty()) {
                    // no more reachable nodes: grow from a fresh random source
                    take(pick_unassigned());
                    continue;
                }
                int u = frontier.front();
                frontier.pop();
                for (int a : graph.out_arcs(u)) {
                    int w = graph.arc(a).dst;
                    if (!assigned[w] && static_cast<int>(comms[c].size()) < target)
                        take(w);
                }
            }
        }
        return CommunityStructure(std::move(comms), n);
    }
    case CommunityRule::Kind::RandomImbalanced: {
        int total = std::accumulate(rule.sizes.begin(), rule.sizes.end(), 0);
        if (rule.sizes.empty() || total > n)
            throw ParameterError("random-imbalanced: sizes must be non-empty and sum to <= n");
        for (int s : rule.sizes)
            if (s <= 0) throw ParameterError("random-imbalanced: sizes must be positive");
        Rng rng(rng_seed);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next_below(i + 1)]);
        std::vector<std::vector<int>> comms;
        int pos = 0;
        for (int s : rule.sizes) {
            comms.emplace_back(perm.begin() + pos, perm.begin() + pos + s);
            pos += s;
        }
        return CommunityStructure(std::move(comms), n);
    }
    }
    throw ParameterError("unknown community rule");
}

} // namespace fairim
