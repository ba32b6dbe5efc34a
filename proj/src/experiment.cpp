#include "fairim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "fairim/errors.hpp"
#include "fairim/evaluation.hpp"
#include "fairim/oracle_greedy.hpp"
#include "fairim/rng.hpp"

namespace fairim {

namespace {

using nlohmann::json;

// Seed stream tags; every cell seed expands into these fixed streams so a row
// can be reproduced in isolation from its seed column.
enum SeedTag : std::uint64_t { kGraphTag = 101, kCommunityTag = 102, kOptTag = 1, kEvalTag = 2, kDrawTag = 3 };

WeightRule weight_rule_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform")
        return WeightRule::uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
    if (kind == "constant") return WeightRule::constant(j.at("value").get<double>());
    throw ConfigError("unknown weight rule: " + kind);
}

GeneratorSpec generator_from_json(const json& j) {
    GeneratorSpec spec;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "barabasi-albert") {
        spec.kind = GeneratorSpec::Kind::BarabasiAlbert;
        spec.n = j.at("n").get<int>();
        spec.attachment = j.value("attachment", 2);
    } else if (kind == "block-stochastic") {
        spec.kind = GeneratorSpec::Kind::BlockStochastic;
        spec.block_sizes = j.at("block_sizes").get<std::vector<int>>();
        spec.intra_p = j.at("p").get<double>();
        spec.inter_q = j.at("q").get<double>();
    } else if (kind == "core-periphery") {
        spec.kind = GeneratorSpec::Kind::CorePeriphery;
        spec.core_size = j.at("core_size").get<int>();
        spec.periphery_size = j.at("periphery_size").get<int>();
        spec.core_p = j.at("p_core").get<double>();
        spec.periphery_p = j.at("p_periphery").get<double>();
        spec.inter_q = j.at("q").get<double>();
    } else {
        throw ConfigError("unknown generator kind: " + kind);
    }
    if (j.contains("weights")) spec.weights = weight_rule_from_json(j.at("weights"));
    return spec;
}

CommunityRule community_rule_from_json(const json& j) {
    CommunityRule rule;
    std::string kind = j.at("rule").get<std::string>();
    if (kind == "singleton") {
        rule.kind = CommunityRule::Kind::Singleton;
    } else if (kind == "bfs") {
        rule.kind = CommunityRule::Kind::Bfs;
        rule.m = j.at("m").get<int>();
    } else if (kind == "random-imbalanced") {
        rule.kind = CommunityRule::Kind::RandomImbalanced;
        rule.sizes = j.at("sizes").get<std::vector<int>>();
    } else {
        throw ConfigError("unknown community rule: " + kind);
    }
    return rule;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    if (j.contains("instance")) {
        const json& inst = j.at("instance");
        if (inst.contains("generator")) cfg.generator = generator_from_json(inst.at("generator"));
        if (inst.contains("edge_list")) cfg.edge_list = inst.at("edge_list").get<std::string>();
        if (inst.contains("graph_json")) cfg.graph_json = inst.at("graph_json").get<std::string>();
        cfg.edge_list_options.undirected = inst.value("undirected", false);
        cfg.edge_list_options.largest_weakly_connected_component = inst.value("lwcc", false);
        if (inst.contains("weights"))
            cfg.edge_list_options.missing_weights = weight_rule_from_json(inst.at("weights"));
    }
    if (j.contains("communities")) {
        const json& comm = j.at("communities");
        if (comm.contains("file")) {
            cfg.community_file = comm.at("file").get<std::string>();
            if (comm.value("order", "community-first") == "node-first")
                cfg.community_order = CommunityColumnOrder::NodeFirst;
        } else {
            cfg.community_rule = community_rule_from_json(comm);
        }
    }
    if (j.contains("model")) {
        std::string model = j.at("model").get<std::string>();
        if (model == "ic") cfg.model = DiffusionModel::ic();
        else if (model == "lt") cfg.model = DiffusionModel::lt();
        else throw ConfigError("unknown model: " + model);
    }
    if (j.contains("k")) cfg.k_values = j.at("k").get<std::vector<int>>();
    if (j.contains("algorithms")) cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    cfg.t_opt = j.value("t_opt", cfg.t_opt);
    cfg.t_eval = j.value("t_eval", cfg.t_eval);
    if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    cfg.sample_multiplier = j.value("sample_multiplier", 1.0);
    cfg.mw.eta = j.value("eta", cfg.mw.eta);
    cfg.mw.max_iterations = j.value("max_iterations", cfg.mw.max_iterations);
    if (j.contains("mw_iterations")) cfg.mw.iterations = j.at("mw_iterations").get<int>();
    cfg.mw.tolerance = j.value("mw_tolerance", cfg.mw.tolerance);
    cfg.graphs = j.value("graphs", 1);
    cfg.repetitions = j.value("repetitions", 1);
    cfg.master_seed = j.value("seed", std::uint64_t{1});
    cfg.out_dir = j.value("out", cfg.out_dir);
    cfg.threads = j.value("threads", 0);
    return cfg;
}

void ExperimentConfig::validate() const {
    int sources = (generator ? 1 : 0) + (edge_list ? 1 : 0) + (graph_json ? 1 : 0);
    if (sources != 1)
        throw ConfigError("exactly one instance source (generator, edge_list, graph_json) required");
    if (algorithms.empty()) throw ConfigError("algorithm list must be non-empty");
    for (const std::string& a : algorithms) {
        const auto& known = known_algorithms();
        if (std::find(known.begin(), known.end(), a) == known.end()) {
            std::string valid;
            for (const auto& label : known) valid += (valid.empty() ? "" : ", ") + label;
            throw ConfigError("unknown algorithm '" + a + "'; valid labels: " + valid);
        }
    }
    if (k_values.empty()) throw ConfigError("k list must be non-empty");
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (graphs < 1) throw ConfigError("graphs must be >= 1");
    if (!community_rule && !community_file)
        throw ConfigError("community rule or community file required");
    mw.validate();
}

Instance build_instance(const ExperimentConfig& cfg, int index) {
    Instance inst;
    std::uint64_t graph_seed = derive_seed(cfg.master_seed, kGraphTag + 1000ULL * index);
    std::uint64_t comm_seed = derive_seed(cfg.master_seed, kCommunityTag + 1000ULL * index);
    inst.graph_seed = graph_seed;

    LoadedGraph loaded;
    if (cfg.generator) {
        GeneratorSpec spec = *cfg.generator;
        spec.rng_seed = graph_seed;
        inst.graph = generate_graph(spec);
        loaded.original_ids.resize(inst.graph.num_nodes());
        for (int v = 0; v < inst.graph.num_nodes(); ++v) {
            loaded.original_ids[v] = v;
            loaded.id_to_dense.emplace(v, v);
        }
    } else if (cfg.edge_list) {
        EdgeListOptions opts = cfg.edge_list_options;
        opts.rng_seed = graph_seed;
        loaded = load_edge_list(*cfg.edge_list, opts);
        inst.graph = loaded.graph;
    } else {
        std::string text = read_text_file(*cfg.graph_json);
        inst.graph = graph_from_json(text);
        loaded.original_ids.resize(inst.graph.num_nodes());
        for (int v = 0; v < inst.graph.num_nodes(); ++v) {
            loaded.original_ids[v] = v;
            loaded.id_to_dense.emplace(v, v);
        }
        if (!cfg.community_rule && !cfg.community_file) {
            auto comms = communities_from_json(text, inst.graph.num_nodes());
            if (comms) {
                inst.communities = *comms;
                return inst;
            }
        }
    }

    if (cfg.community_file) {
        loaded.graph = inst.graph; // id map resolves against the final graph
        inst.communities =
            load_communities(*cfg.community_file, loaded, cfg.community_order,
                             cfg.edge_list_options.largest_weakly_connected_component);
    } else if (cfg.community_rule) {
        inst.communities = generate_communities(inst.graph, *cfg.community_rule, comm_seed);
    } else {
        // graph_json with embedded communities
        auto comms = communities_from_json(read_text_file(*cfg.graph_json),
                                           inst.graph.num_nodes());
        if (!comms) throw ConfigError("instance JSON carries no communities");
        inst.communities = *comms;
    }
    return inst;
}

namespace {

std::int64_t resolve_samples(const ExperimentConfig& cfg, std::int64_t explicit_T, int n) {
    if (cfg.epsilon && cfg.delta) {
        EstimatorParams params;
        params.epsilon = *cfg.epsilon;
        params.delta = *cfg.delta;
        params.multiplier = cfg.sample_multiplier;
        return required_samples(params, n);
    }
    return explicit_T;
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

struct CellResult {
    SeedChoice choice;
    std::string strategy_json;
};

CellResult run_algorithm(const std::string& algo, const Instance& inst,
                         const LiveEdgeSample& opt_sample, int k, const MWConfig& mw) {
    CellResult out;
    if (algo == "set-based") {
        SetSolveResult r = solve_set_based(opt_sample, inst.communities, k, mw);
        out.strategy_json = strategy_to_json(r.strategy);
        out.choice = std::move(r.strategy);
    } else if (algo == "node-based") {
        NodeSolveResult r = solve_node_based(opt_sample, inst.communities, k, mw);
        out.strategy_json = strategy_to_json(r.strategy);
        out.choice = std::move(r.strategy);
    } else if (algo == "uniform") {
        NodeStrategy s = uniform_node_strategy(inst.graph.num_nodes(), k);
        out.strategy_json = strategy_to_json(s);
        out.choice = std::move(s);
    } else if (algo == "greedy-im") {
        std::vector<double> ones(inst.graph.num_nodes(), 1.0);
        out.choice = greedy_weighted_im(opt_sample, ones, k).final_set();
    } else if (algo == "greedy-maximin") {
        out.choice = greedy_maximin(inst.graph, opt_sample, inst.communities, k);
    } else if (algo == "myopic") {
        out.choice = myopic_fish(inst.graph, opt_sample, inst.communities, k);
    } else {
        throw ConfigError("unknown algorithm: " + algo);
    }
    if (out.strategy_json.empty()) {
        // deterministic sets serialize as single-support set strategies
        SetStrategy s;
        s.k = k;
        s.support.push_back({std::get<std::vector<int>>(out.choice), 1.0});
        out.strategy_json = strategy_to_json(s);
    }
    return out;
}

} // namespace

void cmd_generate(const ExperimentConfig& cfg) {
    cfg.validate();
    if (!cfg.generator) throw ConfigError("generate requires a generator instance");
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (!fs::is_directory(cfg.out_dir))
        throw IoError("cannot create output directory: " + cfg.out_dir);

    json manifest;
    manifest["master_seed"] = cfg.master_seed;
    auto& list = manifest["instances"] = json::array();
    for (int g = 0; g < cfg.graphs; ++g) {
        Instance inst = build_instance(cfg, g);
        std::string path = cfg.out_dir + "/graph_" + std::to_string(g) + ".json";
        write_text_file(path, instance_to_json(inst.graph, &inst.communities));
        list.push_back({{"path", path},
                        {"graph_seed", inst.graph_seed},
                        {"n", inst.graph.num_nodes()},
                        {"m", inst.communities.size()}});
    }
    write_text_file(cfg.out_dir + "/manifest.json", manifest.dump(2));
}

std::string cmd_solve(const ExperimentConfig& cfg) {
    cfg.validate();
    apply_threads(cfg.threads);
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir + "/strategies", ec);
    if (!fs::is_directory(cfg.out_dir + "/strategies"))
        throw IoError("cannot create output directory: " + cfg.out_dir);

    std::ostringstream csv;
    csv << report_csv_header() << '\n';

    const int graph_reps = cfg.generator ? cfg.graphs : 1;
    for (int g = 0; g < graph_reps; ++g) {
        Instance inst = build_instance(cfg, g);
        const int n = inst.graph.num_nodes();
        const std::int64_t t_opt = resolve_samples(cfg, cfg.t_opt, n);
        const std::int64_t t_eval = resolve_samples(cfg, cfg.t_eval, n);

        for (int k : cfg.k_values) {
            if (k < 1 || k > n)
                throw ConfigError("k=" + std::to_string(k) + " outside [1, n]");
            for (const std::string& algo : cfg.algorithms) {
                int algo_id = static_cast<int>(
                    std::find(known_algorithms().begin(), known_algorithms().end(), algo) -
                    known_algorithms().begin());
                for (int rep = 0; rep < cfg.repetitions; ++rep) {
                    std::uint64_t cell_seed = derive_seed(
                        cfg.master_seed,
                        (((static_cast<std::uint64_t>(g) * 131 + k) * 131 + algo_id) * 131 + rep));
                    auto start = std::chrono::steady_clock::now();

                    LiveEdgeSample opt_sample = sample_live_edges(
                        inst.graph, cfg.model, static_cast<int>(t_opt),
                        derive_seed(cell_seed, kOptTag));
                    LiveEdgeSample eval_sample = sample_live_edges(
                        inst.graph, cfg.model, static_cast<int>(t_eval),
                        derive_seed(cell_seed, kEvalTag));

                    MWConfig mw = cfg.mw;
                    mw.rng_seed = cell_seed;
                    CellResult cell = run_algorithm(algo, inst, opt_sample, k, mw);

                    EvaluationReport report = evaluate_strategy(
                        cell.choice, eval_sample, inst.communities,
                        derive_seed(cell_seed, kDrawTag));
                    auto stop = std::chrono::steady_clock::now();

                    report.algorithm = algo;
                    report.n = n;
                    report.m = inst.communities.size();
                    report.k = k;
                    report.t_opt = t_opt;
                    report.t_eval = t_eval;
                    report.seed = cell_seed;
                    report.runtime_ms =
                        std::chrono::duration<double, std::milli>(stop - start).count();

                    csv << report_csv_row(report) << '\n';
                    std::string strategy_path = cfg.out_dir + "/strategies/g" +
                                                std::to_string(g) + "_k" + std::to_string(k) +
                                                "_" + algo + "_r" + std::to_string(rep) +
                                                ".json";
                    write_text_file(strategy_path, cell.strategy_json);
                }
            }
        }
    }
    std::string text = csv.str();
    write_text_file(cfg.out_dir + "/results.csv", text);
    return text;
}

std::string cmd_evaluate(const ExperimentConfig& cfg, const std::string& strategy_path,
                         std::uint64_t seed) {
    cfg.validate();
    apply_threads(cfg.threads);
    Instance inst = build_instance(cfg, 0);
    const int n = inst.graph.num_nodes();

    Strategy strategy = [&] {
        try {
            return strategy_from_json(read_text_file(strategy_path));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(strategy_path + ": " + e.what());
        }
    }();

    SeedChoice choice;
    std::int64_t k;
    if (const auto* node = std::get_if<NodeStrategy>(&strategy)) {
        if (node->n() != n)
            throw ConfigError("strategy length " + std::to_string(node->n()) +
                              " does not match instance n=" + std::to_string(n));
        k = node->k;
        choice = *node;
    } else {
        const auto& set = std::get<SetStrategy>(strategy);
        for (const auto& e : set.support)
            for (int v : e.set)
                if (v < 0 || v >= n)
                    throw ConfigError("strategy node " + std::to_string(v) +
                                      " outside instance range n=" + std::to_string(n));
        k = set.k;
        choice = set;
    }

    const std::int64_t t_eval = resolve_samples(cfg, cfg.t_eval, n);
    LiveEdgeSample eval_sample = sample_live_edges(inst.graph, cfg.model,
                                                   static_cast<int>(t_eval),
                                                   derive_seed(seed, kEvalTag));
    EvaluationReport report =
        evaluate_strategy(choice, eval_sample, inst.communities, derive_seed(seed, kDrawTag));
    report.algorithm = "evaluate";
    report.n = n;
    report.m = inst.communities.size();
    report.k = static_cast<int>(k);
    report.t_opt = 0;
    report.t_eval = t_eval;
    report.seed = seed;
    return report_csv_row(report);
}

} // namespace fairim
