#include "sokogen/app.hpp"

#include <atomic>
#include <filesystem>
#include <functional>
#include <thread>

#include "sokogen/csv.hpp"
#include "sokogen/generator.hpp"
#include "sokogen/levels.hpp"
#include "sokogen/pdb_cache.hpp"
#include "sokogen/solver.hpp"
#include "sokogen/state_space.hpp"

namespace sokogen {

namespace {

std::optional<int64_t> metric_or_empty(int64_t v) {
    return v == kNotComputed ? std::nullopt : std::optional<int64_t>(v);
}

void fill_panel(CsvRow& row, const MetricPanel& panel) {
    row.h_pdb1 = metric_or_empty(panel.h[0]);
    row.h_pdb2 = metric_or_empty(panel.h[1]);
    row.h_pdb3 = metric_or_empty(panel.h[2]);
    row.h_pdb4 = metric_or_empty(panel.h[3]);
    row.c2 = metric_or_empty(panel.c[0]);
    row.c3 = metric_or_empty(panel.c[1]);
    row.c4 = metric_or_empty(panel.c[2]);
}

// Nominal per-state footprint for the memory-limit approximation.
uint64_t states_for_mem_limit(uint64_t mem_limit_mb, size_t boxes) {
    if (mem_limit_mb == 0)
        return 0;
    const uint64_t bytes_per_state = 96 + 2 * boxes;
    return mem_limit_mb * 1024 * 1024 / bytes_per_state;
}

void write_output(const std::string& path, const std::string& content, std::ostream& log) {
    if (path.empty() || path == "-")
        log << content;
    else
        write_text_file(path, content);
}

// Builds the per-run heuristic bundle, consulting the disk cache when a
// cache directory is configured.
SokobanHeuristicBundle make_bundle(const Maze& maze, uint64_t seed, const CommonOptions& common) {
    auto store = std::make_shared<BoxTableStore>(maze, common.eager_cap);
    if (common.pdb_cache_dir.empty())
        return SokobanHeuristicBundle(store, seed, common.max_k);

    std::filesystem::create_directories(common.pdb_cache_dir);
    const std::string path = pdb_cache_path(common.pdb_cache_dir, maze, common.max_k, seed);
    const bool loaded = load_pdb_cache(path, maze, common.max_k, seed, *store);
    SokobanHeuristicBundle bundle(store, seed, common.max_k);
    if (!loaded)
        save_pdb_cache(path, maze, common.max_k, seed, *store);
    return bundle;
}

// Runs `task(i)` for every level index; results keep input order.
void for_each_level(int count, int jobs, const std::function<void(int)>& task) {
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i)
            task(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
            task(i);
    };
    std::vector<std::thread> pool;
    const int width = std::min(jobs, count);
    pool.reserve(width);
    for (int t = 0; t < width; ++t)
        pool.emplace_back(worker);
    for (std::thread& t : pool)
        t.join();
}

}  // namespace

int run_generate(const GenerateOptions& options, std::ostream& log) {
    const OrderingSpec ordering = OrderingSpec::parse(options.ordering);
    const OrderingSpec selection = options.selection.empty()
                                       ? ordering.without_novelty()
                                       : OrderingSpec::parse(options.selection);
    if (selection.features.empty())
        throw ParseError("selection objective is empty");
    if (selection.has_novelty())
        throw ParseError("selection objective must not contain novelty");

    std::vector<ParsedLevel> levels = load_xsb_file(options.levels_path);
    const int count = static_cast<int>(levels.size());
    std::vector<CsvRow> rows(count);
    std::vector<NamedLevel> generated(count);

    CommonOptions common = options.common;
    common.max_k = std::max({common.max_k, ordering.max_pdb_order(), selection.max_pdb_order()});

    auto task = [&](int i) {
        const ParsedLevel& level = levels[i];
        SokobanDomain domain(level.maze);
        const Maze& maze = domain.maze();

        Budget budget;
        budget.max_expansions = options.max_expansions;
        budget.time_limit_s = options.time_limit_s;
        budget.max_states = states_for_mem_limit(options.mem_limit_mb, maze.goals().size());

        GenerationResult<SokobanState> result;
        std::string method;
        if (options.method == "beta" && options.aggregate > 1) {
            auto bundle_factory = [&](uint64_t run_seed) {
                return make_bundle(maze, run_seed, common);
            };
            const int inner_jobs = count == 1 ? common.jobs : 1;
            result = aggregate_runs(domain, bundle_factory, options.aggregate, ordering, selection,
                                    budget, options.novelty_arity, common.seed, inner_jobs);
            method = "agg" + std::to_string(options.aggregate) + "[" + ordering.to_string() + "]";
        } else if (options.method == "beta") {
            SokobanHeuristicBundle bundle = make_bundle(maze, common.seed, common);
            result = beta_search(domain, bundle, ordering, selection, budget,
                                 options.novelty_arity, common.seed);
            method = "beta[" + ordering.to_string() + "]";
        } else if (options.method == "rw") {
            SokobanHeuristicBundle bundle = make_bundle(maze, common.seed, common);
            const uint64_t length = options.rw_length ? options.rw_length : options.max_expansions;
            result = random_walk_baseline(domain, bundle, selection, length, common.seed);
            method = "rw" + std::to_string(length);
        } else if (options.method == "bfs") {
            SokobanHeuristicBundle bundle = make_bundle(maze, common.seed, common);
            result = backward_bfs_baseline(domain, bundle, selection, budget, common.seed);
            method = "bfs";
        } else {
            throw ParseError("unknown generation method '" + options.method + "'");
        }

        CsvRow row;
        row.level_id = level.name;
        row.method = method;
        row.expansions = result.stats.expanded;
        fill_panel(row, result.panel);
        row.wall_ms = common.stable_output ? 0 : result.stats.wall_ms;
        row.seed = result.seed;
        rows[i] = std::move(row);
        generated[i] = {level.name, emit_xsb(maze, result.best)};
    };

    for_each_level(count, common.jobs, task);

    std::string csv = csv_header() + "\n";
    for (const CsvRow& row : rows)
        csv += csv_line(row) + "\n";
    write_output(options.out_csv, csv, log);
    if (!options.out_levels.empty())
        write_text_file(options.out_levels, render_collection(generated));
    return 0;
}

int run_metrics(const MetricsOptions& options, std::ostream& log) {
    std::string csv = csv_header() + "\n";

    if (options.toy) {
        GroundDomain domain = toy_pe_problem();
        ToyHeuristicBundle bundle(domain, options.common.seed, options.common.max_k);
        Assignment s0(domain.num_variables(), 0);
        CsvRow row;
        row.level_id = "toy_pe";
        row.method = "metrics";
        fill_panel(row, compute_panel(bundle, s0, options.common.max_k));
        row.seed = options.common.seed;
        csv += csv_line(row) + "\n";
        write_output(options.out_csv, csv, log);
        return 0;
    }

    std::vector<ParsedLevel> levels = load_xsb_file(options.levels_path);
    const int count = static_cast<int>(levels.size());
    std::vector<CsvRow> rows(count);
    auto task = [&](int i) {
        const ParsedLevel& level = levels[i];
        SokobanHeuristicBundle bundle =
            make_bundle(level.maze, options.common.seed, options.common);
        CsvRow row;
        row.level_id = level.name;
        row.method = "metrics";
        fill_panel(row, compute_panel(bundle, level.state, options.common.max_k));
        row.seed = options.common.seed;
        rows[i] = std::move(row);
    };
    for_each_level(count, options.common.jobs, task);

    for (const CsvRow& row : rows)
        csv += csv_line(row) + "\n";
    write_output(options.out_csv, csv, log);
    return 0;
}

int run_evaluate(const EvaluateOptions& options, std::ostream& log) {
    std::vector<ParsedLevel> levels = load_xsb_file(options.levels_path);
    const int count = static_cast<int>(levels.size());
    std::vector<CsvRow> rows(count);
    std::vector<std::string> plans(count);

    auto task = [&](int i) {
        const ParsedLevel& level = levels[i];
        CommonOptions solver_common = options.common;
        solver_common.max_k = 1;
        SokobanHeuristicBundle bundle = make_bundle(level.maze, options.common.seed, solver_common);

        SolverBudget budget;
        budget.max_expansions = options.max_expansions;
        budget.time_limit_s = options.time_limit_s;
        budget.max_states = states_for_mem_limit(options.mem_limit_mb, level.maze.goals().size());

        SolveOutcome outcome = gbfs_solve(
            level.maze, level.state, [&](const SokobanState& s) { return bundle.h(1, s); },
            budget, options.prune_dead);

        CsvRow row;
        row.level_id = level.name;
        row.method = "gbfs(pdb1)";
        row.expansions = outcome.expansions;
        row.solved = outcome.status == SolveStatus::Solved ? 1 : 0;
        if (outcome.status == SolveStatus::Solved) {
            row.plan_pushes = outcome.pushes;
            if (!options.out_plans.empty())
                plans[i] = plan_to_lurd(level.maze, level.state, level.man_cell, outcome.plan);
        }
        row.wall_ms = options.common.stable_output ? 0 : outcome.wall_ms;
        row.seed = options.common.seed;
        rows[i] = std::move(row);
    };
    for_each_level(count, options.common.jobs, task);

    if (!options.out_plans.empty()) {
        std::string text;
        for (int i = 0; i < count; ++i) {
            text += "; " + levels[i].name + "\n";
            text += rows[i].solved.value_or(0) ? plans[i] : std::string("(unsolved)");
            text += "\n\n";
        }
        write_text_file(options.out_plans, text);
    }

    int solved = 0;
    uint64_t total_expansions = 0;
    std::string csv = csv_header() + "\n";
    for (const CsvRow& row : rows) {
        solved += row.solved.value_or(0);
        total_expansions += row.expansions;
        csv += csv_line(row) + "\n";
    }
    CsvRow total;
    total.level_id = "TOTAL";
    total.method = "gbfs(pdb1)";
    total.expansions = total_expansions;
    total.solved = solved;
    total.seed = options.common.seed;
    csv += csv_line(total) + "\n";
    write_output(options.out_csv, csv, log);
    log << "solved " << solved << "/" << count << "\n";
    return 0;
}

}  // namespace sokogen
