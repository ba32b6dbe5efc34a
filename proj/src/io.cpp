#include "fairim/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "fairim/errors.hpp"
#include "fairim/rng.hpp"

namespace fairim {

namespace {

struct RawEdge {
    std::int64_t u;
    std::int64_t v;
    std::optional<double> w;
};

std::vector<RawEdge> parse_edge_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge list: " + path);
    std::vector<RawEdge> edges;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        RawEdge e;
        if (!(ls >> e.u >> e.v))
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected 'u v [w]'");
        double w;
        if (ls >> w) {
            if (w < 0.0 || w > 1.0)
                throw ParseError(path + ":" + std::to_string(line_no) +
                                 ": weight outside [0,1]");
            e.w = w;
        }
        std::string rest;
        if (ls >> rest)
            throw ParseError(path + ":" + std::to_string(line_no) + ": trailing tokens");
        edges.push_back(e);
    }
    return edges;
}

// Largest weakly connected component via union-find over the arc list.
std::vector<int> lwcc_nodes(int n, const std::vector<Arc>& arcs) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Arc& a : arcs) parent[find(a.src)] = find(a.dst);
    std::vector<int> count(n, 0);
    for (int v = 0; v < n; ++v) ++count[find(v)];
    int best = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
        if (find(v) == best) keep.push_back(v);
    return keep;
}

} // namespace

LoadedGraph load_edge_list(const std::string& path, const EdgeListOptions& opts) {
    opts.missing_weights.validate();
    auto raw = parse_edge_lines(path);

    LoadedGraph out;
    auto dense_id = [&](std::int64_t orig) {
        auto it = out.id_to_dense.find(orig);
        if (it != out.id_to_dense.end()) return it->second;
        int id = static_cast<int>(out.original_ids.size());
        out.original_ids.push_back(orig);
        out.id_to_dense.emplace(orig, id);
        return id;
    };

    Rng rng(opts.rng_seed);
    std::vector<Arc> arcs;
    std::unordered_map<std::uint64_t, bool> seen_pair; // undirected dedupe
    for (const RawEdge& e : raw) {
        int u = dense_id(e.u);
        int v = dense_id(e.v);
        double w = e.w ? *e.w : opts.missing_weights.draw(rng);
        if (opts.undirected) {
            int lo = std::min(u, v), hi = std::max(u, v);
            std::uint64_t key = static_cast<std::uint64_t>(lo) << 32 |
                                static_cast<std::uint32_t>(hi);
            if (seen_pair.emplace(key, true).second) {
                arcs.push_back({u, v, w});
                if (u != v) arcs.push_back({v, u, w});
            }
        } else {
            arcs.push_back({u, v, w});
        }
    }

    int n = static_cast<int>(out.original_ids.size());
    if (opts.largest_weakly_connected_component && n > 0) {
        std::vector<int> keep = lwcc_nodes(n, arcs);
        std::vector<int> remap(n, -1);
        std::vector<std::int64_t> kept_original;
        for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
            remap[keep[i]] = i;
            kept_original.push_back(out.original_ids[keep[i]]);
        }
        std::vector<Arc> kept_arcs;
        for (const Arc& a : arcs)
            if (remap[a.src] >= 0 && remap[a.dst] >= 0)
                kept_arcs.push_back({remap[a.src], remap[a.dst], a.weight});
        out.original_ids = std::move(kept_original);
        out.id_to_dense.clear();
        for (int i = 0; i < static_cast<int>(out.original_ids.size()); ++i)
            out.id_to_dense.emplace(out.original_ids[i], i);
        n = static_cast<int>(out.original_ids.size());
        arcs = std::move(kept_arcs);
    }

    out.graph = DirectedWeightedGraph(n, std::move(arcs));
    return out;
}

CommunityStructure load_communities(const std::string& path, const LoadedGraph& loaded,
                                    CommunityColumnOrder order, bool skip_unknown_nodes) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open community file: " + path);

    std::vector<std::vector<int>> comms;          // first-seen community order
    std::unordered_map<std::int64_t, int> comm_id;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::int64_t a, b;
        if (!(ls >> a >> b))
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected two integer columns");
        std::int64_t comm = order == CommunityColumnOrder::CommunityFirst ? a : b;
        std::int64_t node = order == CommunityColumnOrder::CommunityFirst ? b : a;

        int dense;
        auto it = loaded.id_to_dense.find(node);
        if (it == loaded.id_to_dense.end()) {
            if (skip_unknown_nodes) continue;
            throw ParseError(path + ":" + std::to_string(line_no) + ": node id " +
                             std::to_string(node) + " out of range");
        }
        dense = it->second;

        auto [cit, fresh] = comm_id.emplace(comm, static_cast<int>(comms.size()));
        if (fresh) comms.emplace_back();
        comms[cit->second].push_back(dense);
    }
    comms.erase(std::remove_if(comms.begin(), comms.end(),
                               [](const auto& c) { return c.empty(); }),
                comms.end());
    if (comms.empty()) throw ParseError(path + ": no communities found");
    return CommunityStructure(std::move(comms), loaded.graph.num_nodes());
}

std::string instance_to_json(const DirectedWeightedGraph& graph,
                             const CommunityStructure* communities) {
    nlohmann::json j;
    j["n"] = graph.num_nodes();
    auto& arr = j["arcs"] = nlohmann::json::array();
    for (const Arc& a : graph.arcs()) arr.push_back({a.src, a.dst, a.weight});
    if (communities) {
        auto& cs = j["communities"] = nlohmann::json::array();
        for (const auto& c : communities->communities()) cs.push_back(c);
    }
    return j.dump();
}

DirectedWeightedGraph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs"))
        arcs.push_back({a.at(0).get<int>(), a.at(1).get<int>(), a.at(2).get<double>()});
    return DirectedWeightedGraph(j.at("n").get<int>(), std::move(arcs));
}

std::optional<CommunityStructure> communities_from_json(const std::string& text, int n) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("communities")) return std::nullopt;
    std::vector<std::vector<int>> comms;
    for (const auto& c : j.at("communities")) comms.push_back(c.get<std::vector<int>>());
    return CommunityStructure(std::move(comms), n);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace fairim
