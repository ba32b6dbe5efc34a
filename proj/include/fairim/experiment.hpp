#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairim/diffusion.hpp"
#include "fairim/fair_solvers.hpp"
#include "fairim/generators.hpp"
#include "fairim/graph.hpp"
#include "fairim/io.hpp"

namespace fairim {

/// Declarative experiment description (JSON file plus CLI flag overrides).
struct ExperimentConfig {
    // Instance source: exactly one of generator / edge_list / graph_json.
    std::optional<GeneratorSpec> generator;
    std::optional<std::string> edge_list;
    std::optional<std::string> graph_json;
    EdgeListOptions edge_list_options;

    // Community source: a rule or a file.
    std::optional<CommunityRule> community_rule;
    std::optional<std::string> community_file;
    CommunityColumnOrder community_order = CommunityColumnOrder::CommunityFirst;

    DiffusionModel model = DiffusionModel::ic();
    std::vector<int> k_values{1};
    std::vector<std::string> algorithms{"set-based"};

    // Sample sizes: explicit counts, or the Hoeffding formula when eps/delta set.
    std::int64_t t_opt = 100;
    std::int64_t t_eval = 100;
    std::optional<double> epsilon;
    std::optional<double> delta;
    double sample_multiplier = 1.0;

    MWConfig mw;

    int graphs = 1;      // graph repetitions (generator instances only)
    int repetitions = 1; // runs per graph
    std::uint64_t master_seed = 1;
    std::string out_dir = "out";
    int threads = 0; // 0 keeps the runtime default

    static ExperimentConfig from_json(const std::string& text);
    void validate() const;
};

inline const std::vector<std::string>& known_algorithms() {
    static const std::vector<std::string> algos = {
        "set-based", "node-based", "uniform", "greedy-im", "greedy-maximin", "myopic"};
    return algos;
}

struct Instance {
    DirectedWeightedGraph graph;
    CommunityStructure communities;
    std::uint64_t graph_seed = 0;
};

// Materializes graph repetition `index` (generator seeds derive from the
// master seed; file instances ignore the index).
Instance build_instance(const ExperimentConfig& cfg, int index);

// generate: instance JSON files plus a manifest with the seeds used.
void cmd_generate(const ExperimentConfig& cfg);

// solve: every (graph, k, algorithm, repetition) cell; returns the CSV text
// (also written to <out>/results.csv, strategies under <out>/strategies/).
std::string cmd_solve(const ExperimentConfig& cfg);

// evaluate: one strategy file against an instance; returns a CSV row.
std::string cmd_evaluate(const ExperimentConfig& cfg, const std::string& strategy_path,
                         std::uint64_t seed);

} // namespace fairim
