#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "sokogen/pdb.hpp"

namespace sokogen {

struct CommonOptions {
    uint64_t seed = 1;
    int max_k = 4;                        // highest PDB order built and reported
    size_t eager_cap = kDefaultEagerCap;  // abstract-state cap per pattern table
    std::string pdb_cache_dir;            // empty = no disk cache
    int jobs = 1;
    bool stable_output = false;           // zero wall_ms columns for bit-stable CSV
};

struct GenerateOptions {
    CommonOptions common;
    std::string levels_path;
    std::string method = "beta";  // beta | rw | bfs
    std::string ordering = "w(pdb4),4C,pdb4";
    std::string selection;        // empty = ordering without novelty
    int aggregate = 1;
    uint64_t max_expansions = 100000;
    double time_limit_s = 0;
    uint64_t mem_limit_mb = 0;
    int novelty_arity = 2;
    uint64_t rw_length = 0;       // 0 = use max_expansions
    std::string out_levels;
    std::string out_csv;
};

struct MetricsOptions {
    CommonOptions common;
    std::string levels_path;  // ignored with toy = true
    bool toy = false;
    std::string out_csv;
};

struct EvaluateOptions {
    CommonOptions common;
    std::string levels_path;
    uint64_t max_expansions = 100000;
    double time_limit_s = 0;
    uint64_t mem_limit_mb = 0;
    bool prune_dead = true;
    std::string out_csv;
    std::string out_plans;  // optional LURD plans for solved levels
};

// One generated initial state per input maze, written as XSB plus one CSV row.
int run_generate(const GenerateOptions& options, std::ostream& log);

// h^PDB1..k and conflict orders for the given initial states.
int run_metrics(const MetricsOptions& options, std::ostream& log);

// Reference-solver outcomes per level plus a summary row.
int run_evaluate(const EvaluateOptions& options, std::ostream& log);

}  // namespace sokogen
