#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace sokogen {

// One result row. The column set mirrors the evaluation table of the level
// generator: identification, expansion effort, the heuristic/conflict panel,
// solver outcome and provenance.
struct CsvRow {
    std::string level_id;
    std::string method;
    uint64_t expansions = 0;
    std::optional<int64_t> h_pdb1, h_pdb2, h_pdb3, h_pdb4;
    std::optional<int64_t> c2, c3, c4;
    std::optional<int> solved;
    std::optional<int64_t> plan_pushes;
    double wall_ms = 0;
    uint64_t seed = 0;
};

std::string csv_header();
std::string csv_line(const CsvRow& row);

}  // namespace sokogen
