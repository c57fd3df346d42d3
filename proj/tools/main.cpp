#include <iostream>

#include <CLI11.hpp>

#include "sokogen/app.hpp"

namespace {

void add_common_flags(CLI::App* cmd, sokogen::CommonOptions& common) {
    cmd->add_option("--seed", common.seed, "master RNG seed (recorded in all outputs)");
    cmd->add_option("--k", common.max_k, "highest PDB order to build/report")
        ->check(CLI::Range(1, 8));
    cmd->add_option("--eager-cap", common.eager_cap,
                    "abstract-state cap per pattern table before lazy fallback");
    cmd->add_option("--pdb-cache", common.pdb_cache_dir, "directory for binary PDB caches");
    cmd->add_option("--jobs", common.jobs, "worker threads across levels")->check(CLI::Range(1, 256));
    cmd->add_flag("--stable-output", common.stable_output,
                  "zero wall_ms columns so equal seeds give byte-identical CSV");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sokogen: hard, solvable Sokoban initial states by backward best-first search"};
    app.require_subcommand(1);

    sokogen::GenerateOptions gen;
    CLI::App* generate = app.add_subcommand("generate", "generate initial states for input mazes");
    generate->add_option("--levels", gen.levels_path, "input XSB collection (mazes)")->required();
    generate->add_option("--method", gen.method, "beta | rw | bfs")
        ->check(CLI::IsMember({"beta", "rw", "bfs"}));
    generate->add_option("--ordering", gen.ordering,
                         "expansion order, e.g. 'w(pdb4),4C,pdb4'");
    generate->add_option("--selection", gen.selection,
                         "selection objective (default: ordering without novelty)");
    generate->add_option("--aggregate", gen.aggregate, "independent runs; best state kept")
        ->check(CLI::Range(1, 10000));
    generate->add_option("--expansions", gen.max_expansions, "expansion budget per run");
    generate->add_option("--time-limit", gen.time_limit_s, "wall-clock limit per run, seconds");
    generate->add_option("--mem-limit", gen.mem_limit_mb, "approximate memory limit, MB");
    generate->add_option("--novelty-arity", gen.novelty_arity, "max novelty tuple size")
        ->check(CLI::Range(1, 8));
    generate->add_option("--rw-length", gen.rw_length, "random-walk length (rw method)");
    generate->add_option("--out-levels", gen.out_levels, "output XSB file for generated states");
    generate->add_option("--out-csv", gen.out_csv, "output CSV file ('-' = stdout)");
    add_common_flags(generate, gen.common);

    sokogen::MetricsOptions met;
    CLI::App* metrics = app.add_subcommand("metrics", "heuristic/conflict panel for given states");
    metrics->add_option("--levels", met.levels_path, "input XSB collection");
    metrics->add_flag("--toy", met.toy, "evaluate the built-in toy domain instead of levels");
    metrics->add_option("--out-csv", met.out_csv, "output CSV file ('-' = stdout)");
    add_common_flags(metrics, met.common);

    sokogen::EvaluateOptions eval;
    CLI::App* evaluate = app.add_subcommand("evaluate", "run the reference solver on levels");
    evaluate->add_option("--levels", eval.levels_path, "input XSB collection")->required();
    evaluate->add_option("--expansions", eval.max_expansions, "solver expansion budget");
    evaluate->add_option("--time-limit", eval.time_limit_s, "solver wall-clock limit, seconds");
    evaluate->add_option("--mem-limit", eval.mem_limit_mb, "approximate memory limit, MB");
    evaluate->add_flag("!--no-dead-pruning", eval.prune_dead, "disable dead-square pruning");
    evaluate->add_option("--out-csv", eval.out_csv, "output CSV file ('-' = stdout)");
    evaluate->add_option("--out-plans", eval.out_plans, "write LURD plans for solved levels");
    add_common_flags(evaluate, eval.common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed())
            return sokogen::run_generate(gen, std::cout);
        if (metrics->parsed()) {
            if (!met.toy && met.levels_path.empty())
                throw sokogen::ParseError("metrics needs --levels or --toy");
            return sokogen::run_metrics(met, std::cout);
        }
        if (evaluate->parsed())
            return sokogen::run_evaluate(eval, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
