#include "fairim/fair_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fairim/errors.hpp"
#include "fairim/oracle_greedy.hpp"

namespace fairim {

void MWConfig::validate() const {
    if (!(eta > 0.0 && eta < 1.0)) throw ParameterError("eta must lie in (0,1)");
    if (max_iterations < 1) throw ParameterError("max_iterations must be positive");
    if (iterations && *iterations < 1) throw ParameterError("iterations must be positive");
    if (probe_every < 1 || window < 1) throw ParameterError("invalid convergence probe");
    if (tolerance < 0.0) throw ParameterError("tolerance must be non-negative");
}

int MWConfig::planned_iterations(int n, int m, int k) const {
    if (iterations) return *iterations;
    double bound = std::ceil(std::log(static_cast<double>(m)) / (eta * eta) *
                             (static_cast<double>(n) / k));
    int planned = bound < 1.0 ? 1 : static_cast<int>(bound);
    return std::min(planned, max_iterations);
}

namespace {

// One covering MW run; both solvers share it and differ only in how the
// oracle-set history is averaged into a strategy.
MWState run_mw(const LiveEdgeSample& sample, const CommunityStructure& communities, int k,
               const MWConfig& cfg) {
    cfg.validate();
    const int n = sample.num_nodes();
    const int m = communities.size();
    if (k < 1) throw ParameterError("budget k must be positive");
    if (k > n) throw ParameterError("budget k exceeds the node count");
    const int T = sample.num_samples();

    // Coverage counts per community member translate oracle coverage into
    // sigma~_C(S_t); precompute each member's index position once.
    std::vector<std::vector<int>> member_pos(m);
    for (int c = 0; c < m; ++c) {
        for (int v : communities.community(c)) {
            int j = sample.index_of(v);
            if (j < 0)
                throw ModelError("community member " + std::to_string(v) + " is not indexed");
            member_pos[c].push_back(j);
        }
    }

    const int N = cfg.planned_iterations(n, m, k);
    MWState state;
    state.rng_seed = cfg.rng_seed;
    state.duals.assign(m, 1.0 / m);
    std::vector<double> cumulative(m, 0.0); // sum over iterations of sigma~_C(S_t)

    for (int it = 1; it <= N; ++it) {
        std::vector<double> weights = weights_from_community_duals(state.duals, communities);
        GreedyTrace trace = greedy_weighted_im(sample, weights, k);

        std::vector<double> cover_value(m);
        for (int c = 0; c < m; ++c) {
            long long covered = 0;
            for (int j : member_pos[c]) covered += trace.coverage_counts[j];
            cover_value[c] = static_cast<double>(covered) /
                             (static_cast<double>(T) * member_pos[c].size());
        }

        state.oracle_sets.push_back(trace.final_set());
        state.iterations_run = it;

        double total = 0.0;
        for (int c = 0; c < m; ++c) {
            state.duals[c] *= std::exp(-cfg.eta * cover_value[c]);
            cumulative[c] += cover_value[c];
            total += state.duals[c];
        }
        for (double& zc : state.duals) zc /= total;

        if (it % cfg.probe_every == 0 || it == N) {
            double running_min = cumulative[0];
            for (double c : cumulative) running_min = std::min(running_min, c);
            state.objective_probes.emplace_back(it, running_min / it);
            if (cfg.tolerance > 0.0 && it >= cfg.min_iterations &&
                static_cast<int>(state.objective_probes.size()) >= cfg.window) {
                auto begin = state.objective_probes.end() - cfg.window;
                double lo = begin->second, hi = begin->second;
                for (auto p = begin; p != state.objective_probes.end(); ++p) {
                    lo = std::min(lo, p->second);
                    hi = std::max(hi, p->second);
                }
                if (hi - lo <= cfg.tolerance * std::max(hi, 1e-12)) break;
            }
        }
    }
    return state;
}

} // namespace

SetSolveResult solve_set_based(const LiveEdgeSample& sample,
                               const CommunityStructure& communities, int k,
                               const MWConfig& cfg) {
    MWState state = run_mw(sample, communities, k, cfg);
    const int N = state.iterations_run;

    std::map<std::vector<int>, int> multiplicity; // merges duplicate oracle sets
    for (const auto& s : state.oracle_sets) ++multiplicity[s];

    SetSolveResult out;
    out.state = state;
    out.strategy.k = k;
    for (const auto& [set, count] : multiplicity)
        out.strategy.support.push_back({set, static_cast<double>(count) / N});
    out.strategy.validate();
    return out;
}

NodeSolveResult solve_node_based(const LiveEdgeSample& sample,
                                 const CommunityStructure& communities, int k,
                                 const MWConfig& cfg) {
    MWState state = run_mw(sample, communities, k, cfg);
    const int N = state.iterations_run;

    NodeSolveResult out;
    out.state = state;
    out.strategy.k = k;
    out.strategy.x.assign(sample.num_nodes(), 0.0);
    for (const auto& s : state.oracle_sets)
        for (int v : s) out.strategy.x[v] += 1.0;
    for (double& xi : out.strategy.x) xi /= N;
    out.strategy.validate();
    return out;
}

std::vector<double> lambda_value(const LiveEdgeSample& sample, const std::vector<double>& x,
                                 const CommunityStructure& communities) {
    const int T = sample.num_samples();
    if (static_cast<int>(x.size()) != sample.num_nodes())
        throw ParameterError("strategy length mismatch");

    std::vector<double> out(communities.size(), 0.0);
    for (int c = 0; c < communities.size(); ++c) {
        double sum = 0.0;
        for (int v : communities.community(c)) {
            int j = sample.index_of(v);
            if (j < 0)
                throw ModelError("community member " + std::to_string(v) + " is not indexed");
            double lv = 0.0;
            for (int t = 0; t < T; ++t) {
                double mass = 0.0;
                for (int i : sample.sources_reaching_pos(t, j)) mass += x[i];
                lv += std::min(1.0, mass);
            }
            sum += lv / T;
        }
        out[c] = sum / communities.community(c).size();
    }
    return out;
}

} // namespace fairim
