#include "fairim/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "fairim/errors.hpp"
#include "fairim/rng.hpp"
#include "fairim/strategies.hpp"

namespace fairim {

std::int64_t required_samples(const EstimatorParams& params, int n) {
    if (params.override_T > 0) return params.override_T;
    if (!(params.epsilon > 0.0 && params.epsilon < 1.0))
        throw ParameterError("epsilon must lie in (0,1)");
    if (!(params.delta > 0.0 && params.delta < 0.5))
        throw ParameterError("delta must lie in (0,1/2)");
    if (n < 1) throw ParameterError("n must be positive");
    if (params.multiplier <= 0.0) throw ParameterError("multiplier must be positive");
    double t = params.multiplier / (params.epsilon * params.epsilon) *
               (n + std::log(static_cast<double>(n)) + std::log(1.0 / params.delta));
    return static_cast<std::int64_t>(std::ceil(t));
}

std::span<const int> LiveEdgeSample::sources_reaching(int t, int v) const {
    int j = node_to_index_[v];
    if (j < 0) throw ModelError("node " + std::to_string(v) + " is not indexed");
    return samples_[t].reaching.row(j);
}

namespace {

using detail::Csr;

Csr build_csr(int rows, const std::vector<std::pair<int, int>>& pairs) {
    Csr csr;
    csr.offsets.assign(rows + 1, 0);
    for (const auto& [r, _] : pairs) ++csr.offsets[r + 1];
    for (int r = 0; r < rows; ++r) csr.offsets[r + 1] += csr.offsets[r];
    csr.items.resize(pairs.size());
    std::vector<int> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
    for (const auto& [r, x] : pairs) csr.items[cursor[r]++] = x;
    return csr;
}

std::vector<Arc> draw_live_arcs(const DirectedWeightedGraph& graph, DiffusionModel model,
                                Rng rng) {
    std::vector<Arc> live;
    if (model.kind == DiffusionModel::Kind::IndependentCascade) {
        for (const Arc& a : graph.arcs())
            if (rng.next_double() < a.weight) live.push_back(a);
    } else {
        for (int v = 0; v < graph.num_nodes(); ++v) {
            double r = rng.next_double();
            double cum = 0.0;
            for (int a : graph.in_arcs(v)) {
                cum += graph.arc(a).weight;
                if (r < cum) {
                    live.push_back(graph.arc(a));
                    break;
                }
            }
        }
    }
    return live;
}

} // namespace

LiveEdgeSample sample_from_live_arcs(int n, DiffusionModel model, std::uint64_t seed,
                                     const std::vector<std::vector<Arc>>& live,
                                     const std::vector<int>* index_nodes) {
    LiveEdgeSample out;
    out.n_ = n;
    out.T_ = static_cast<int>(live.size());
    out.seed_ = seed;
    out.model_ = model;

    if (index_nodes) {
        out.indexed_nodes_ = *index_nodes;
        std::sort(out.indexed_nodes_.begin(), out.indexed_nodes_.end());
        out.indexed_nodes_.erase(
            std::unique(out.indexed_nodes_.begin(), out.indexed_nodes_.end()),
            out.indexed_nodes_.end());
        out.full_index_ = static_cast<int>(out.indexed_nodes_.size()) == n;
    } else {
        out.indexed_nodes_.resize(n);
        std::iota(out.indexed_nodes_.begin(), out.indexed_nodes_.end(), 0);
        out.full_index_ = true;
    }
    out.node_to_index_.assign(n, -1);
    for (int j = 0; j < static_cast<int>(out.indexed_nodes_.size()); ++j)
        out.node_to_index_[out.indexed_nodes_[j]] = j;

    out.samples_.resize(out.T_);

#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < out.T_; ++t) {
        auto& slot = out.samples_[t];
        std::vector<std::pair<int, int>> fwd, rev;
        fwd.reserve(live[t].size());
        rev.reserve(live[t].size());
        for (const Arc& a : live[t]) {
            slot.live_arcs.emplace_back(a.src, a.dst);
            fwd.emplace_back(a.src, a.dst);
            rev.emplace_back(a.dst, a.src);
        }
        slot.live_out = build_csr(n, fwd);
        Csr live_in = build_csr(n, rev);

        // Reverse search from each indexed node gives its source set.
        std::vector<std::pair<int, int>> reach_pairs, cover_pairs;
        std::vector<int> stack;
        std::vector<char> visited(n, 0);
        std::vector<int> touched;
        for (int j = 0; j < static_cast<int>(out.indexed_nodes_.size()); ++j) {
            int v = out.indexed_nodes_[j];
            stack.assign(1, v);
            visited[v] = 1;
            touched.assign(1, v);
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int w : live_in.row(u)) {
                    if (!visited[w]) {
                        visited[w] = 1;
                        touched.push_back(w);
                        stack.push_back(w);
                    }
                }
            }
            std::sort(touched.begin(), touched.end());
            for (int src : touched) {
                reach_pairs.emplace_back(j, src);
                cover_pairs.emplace_back(src, j);
                visited[src] = 0;
            }
        }
        slot.reaching = build_csr(static_cast<int>(out.indexed_nodes_.size()), reach_pairs);
        slot.covers = build_csr(n, cover_pairs);
    }
    return out;
}

LiveEdgeSample sample_live_edges(const DirectedWeightedGraph& graph, DiffusionModel model,
                                 int T, std::uint64_t rng_seed,
                                 const std::vector<int>* index_nodes) {
    if (T < 1) throw ParameterError("sample count T must be positive");
    if (model.kind == DiffusionModel::Kind::LinearThreshold) {
        for (int v = 0; v < graph.num_nodes(); ++v)
            if (graph.in_weight_sum(v) > 1.0 + 1e-9)
                throw ModelError("linear threshold requires in-weight sum <= 1; node " +
                                 std::to_string(v) + " has " +
                                 std::to_string(graph.in_weight_sum(v)));
    }
    std::vector<std::vector<Arc>> live(T);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < T; ++t)
        live[t] = draw_live_arcs(graph, model, Rng::derive(rng_seed, t));
    return sample_from_live_arcs(graph.num_nodes(), model, rng_seed, live, index_nodes);
}

SigmaVector sigma_set(const LiveEdgeSample& sample, const std::vector<int>& seed_set) {
    const int n = sample.num_nodes();
    const int T = sample.num_samples();
    for (int v : seed_set)
        if (v < 0 || v >= n) throw ParameterError("seed node out of range");

    std::vector<int> counts(n, 0);
#pragma omp parallel
    {
        std::vector<int> local(n, 0);
        std::vector<char> visited(n, 0);
        std::vector<int> stack;
#pragma omp for schedule(dynamic) nowait
        for (int t = 0; t < T; ++t) {
            std::fill(visited.begin(), visited.end(), 0);
            stack.clear();
            for (int s : seed_set)
                if (!visited[s]) {
                    visited[s] = 1;
                    stack.push_back(s);
                }
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                ++local[u];
                for (int w : sample.live_out(t, u))
                    if (!visited[w]) {
                        visited[w] = 1;
                        stack.push_back(w);
                    }
            }
        }
#pragma omp critical
        for (int v = 0; v < n; ++v) counts[v] += local[v];
    }

    SigmaVector out;
    out.per_node.resize(n);
    for (int v = 0; v < n; ++v) {
        out.per_node[v] = static_cast<double>(counts[v]) / T;
        out.total += out.per_node[v];
    }
    return out;
}

SigmaVector sigma_node_strategy(const LiveEdgeSample& sample, const std::vector<double>& x) {
    const int n = sample.num_nodes();
    const int T = sample.num_samples();
    if (static_cast<int>(x.size()) != n) throw ParameterError("strategy length mismatch");
    if (!sample.full_index())
        throw ModelError("sigma_node_strategy requires a fully indexed sample");

    SigmaVector out;
    out.per_node.assign(n, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < n; ++j) {
        int v = sample.indexed_nodes()[j];
        double acc = 0.0;
        for (int t = 0; t < T; ++t) {
            double miss = 1.0;
            for (int i : sample.sources_reaching_pos(t, j)) miss *= 1.0 - x[i];
            acc += 1.0 - miss;
        }
        out.per_node[v] = acc / T;
    }
    for (int v = 0; v < n; ++v) out.total += out.per_node[v];
    return out;
}

SigmaVector sigma_set_strategy(const LiveEdgeSample& sample, const SetStrategy& p) {
    p.validate();
    SigmaVector out;
    out.per_node.assign(sample.num_nodes(), 0.0);
    for (const auto& entry : p.support) {
        SigmaVector part = sigma_set(sample, entry.set);
        for (int v = 0; v < sample.num_nodes(); ++v)
            out.per_node[v] += entry.probability * part.per_node[v];
    }
    for (double s : out.per_node) out.total += s;
    return out;
}

std::vector<double> community_value(const std::vector<double>& per_node,
                                    const CommunityStructure& communities) {
    std::vector<double> out(communities.size());
    for (int c = 0; c < communities.size(); ++c) {
        double sum = 0.0;
        for (int v : communities.community(c)) sum += per_node.at(v);
        out[c] = sum / communities.community(c).size();
    }
    return out;
}

std::string LiveEdgeSample::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["T"] = T_;
    j["seed"] = seed_;
    j["model"] = model_.kind == DiffusionModel::Kind::IndependentCascade ? "ic" : "lt";
    j["full_index"] = full_index_;
    if (!full_index_) j["indexed_nodes"] = indexed_nodes_;
    auto& arr = j["live_arcs"] = nlohmann::json::array();
    for (const auto& s : samples_) {
        nlohmann::json sa = nlohmann::json::array();
        for (const auto& [u, v] : s.live_arcs) sa.push_back({u, v});
        arr.push_back(std::move(sa));
    }
    return j.dump();
}

LiveEdgeSample LiveEdgeSample::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    DiffusionModel model =
        j.at("model").get<std::string>() == "lt" ? DiffusionModel::lt() : DiffusionModel::ic();
    std::vector<std::vector<Arc>> live;
    for (const auto& sa : j.at("live_arcs")) {
        std::vector<Arc> arcs;
        for (const auto& a : sa)
            arcs.push_back({a.at(0).get<int>(), a.at(1).get<int>(), 1.0});
        live.push_back(std::move(arcs));
    }
    std::vector<int> idx;
    const std::vector<int>* idx_ptr = nullptr;
    if (j.contains("indexed_nodes")) {
        idx = j.at("indexed_nodes").get<std::vector<int>>();
        idx_ptr = &idx;
    }
    return sample_from_live_arcs(n, model, j.at("seed").get<std::uint64_t>(), live, idx_ptr);
}

} // namespace fairim
