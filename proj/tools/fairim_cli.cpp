#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairim/errors.hpp"
#include "fairim/evaluation.hpp"
#include "fairim/experiment.hpp"
#include "fairim/io.hpp"

namespace {

struct Flags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::vector<std::string>> algos;
    std::optional<std::vector<int>> k;
    std::optional<double> eps;
    std::optional<double> delta;
    std::optional<double> eta;
    std::optional<int> max_iters;
    std::optional<std::int64_t> t_opt;
    std::optional<std::int64_t> t_eval;
    std::optional<std::string> model;
    bool undirected = false;
    bool lwcc = false;
    std::optional<int> threads;
    std::optional<int> repetitions;
    std::optional<int> graphs;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "experiment config JSON")->required();
    cmd->add_option("--seed", f.seed, "master rng seed");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--algos", f.algos, "algorithm labels")->delimiter(',');
    cmd->add_option("--k", f.k, "budget values")->delimiter(',');
    cmd->add_option("--eps", f.eps, "estimator epsilon");
    cmd->add_option("--delta", f.delta, "estimator delta");
    cmd->add_option("--eta", f.eta, "multiplicative-weights step");
    cmd->add_option("--max-iters", f.max_iters, "multiplicative-weights iteration cap");
    cmd->add_option("--t-opt", f.t_opt, "optimization sample count");
    cmd->add_option("--t-eval", f.t_eval, "evaluation sample count");
    cmd->add_option("--model", f.model, "diffusion model")->check(CLI::IsMember({"ic", "lt"}));
    cmd->add_flag("--undirected", f.undirected, "interpret edge-list lines as undirected");
    cmd->add_flag("--lwcc", f.lwcc, "restrict to the largest weakly connected component");
    cmd->add_option("--threads", f.threads, "worker thread count");
    cmd->add_option("--repetitions", f.repetitions, "runs per graph");
    cmd->add_option("--graphs", f.graphs, "graph repetitions");
}

fairim::ExperimentConfig load_config(const Flags& f) {
    using fairim::ExperimentConfig;
    ExperimentConfig cfg = ExperimentConfig::from_json(fairim::read_text_file(f.config_path));
    if (f.seed) cfg.master_seed = *f.seed;
    if (f.out) cfg.out_dir = *f.out;
    if (f.algos) cfg.algorithms = *f.algos;
    if (f.k) cfg.k_values = *f.k;
    if (f.eps) cfg.epsilon = *f.eps;
    if (f.delta) cfg.delta = *f.delta;
    if (f.eta) cfg.mw.eta = *f.eta;
    if (f.max_iters) cfg.mw.max_iterations = *f.max_iters;
    if (f.t_opt) cfg.t_opt = *f.t_opt;
    if (f.t_eval) cfg.t_eval = *f.t_eval;
    if (f.model) cfg.model = *f.model == "lt" ? fairim::DiffusionModel::lt()
                                              : fairim::DiffusionModel::ic();
    if (f.undirected) cfg.edge_list_options.undirected = true;
    if (f.lwcc) cfg.edge_list_options.largest_weakly_connected_component = true;
    if (f.threads) cfg.threads = *f.threads;
    if (f.repetitions) cfg.repetitions = *f.repetitions;
    if (f.graphs) cfg.graphs = *f.graphs;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomized fair influence maximization experiments"};
    app.require_subcommand(1);

    Flags flags;
    std::string strategy_path;
    std::uint64_t eval_seed = 1;

    CLI::App* generate = app.add_subcommand("generate", "write instance files");
    add_common_flags(generate, flags);

    CLI::App* solve = app.add_subcommand("solve", "run algorithms and emit CSV");
    add_common_flags(solve, flags);

    CLI::App* evaluate = app.add_subcommand("evaluate", "re-evaluate a strategy file");
    add_common_flags(evaluate, flags);
    evaluate->add_option("--strategy", strategy_path, "strategy JSON file")->required();
    evaluate->add_option("--eval-seed", eval_seed, "cell seed for the evaluation sample");

    CLI11_PARSE(app, argc, argv);

    try {
        fairim::ExperimentConfig cfg = load_config(flags);
        if (generate->parsed()) {
            fairim::cmd_generate(cfg);
        } else if (solve->parsed()) {
            std::cout << fairim::cmd_solve(cfg);
        } else {
            std::cout << fairim::report_csv_header() << '\n'
                      << fairim::cmd_evaluate(cfg, strategy_path, eval_seed) << '\n';
        }
    } catch (const fairim::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
