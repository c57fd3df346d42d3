#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sokogen/sokoban.hpp"

namespace sokogen {

enum class SolveStatus { Solved, Exhausted, TimedOut, MemoryOut };

const char* to_string(SolveStatus status);

struct SolveOutcome {
    SolveStatus status = SolveStatus::Exhausted;
    int64_t pushes = -1;             // plan length when solved
    uint64_t expansions = 0;
    double wall_ms = 0;
    std::vector<PushMove> plan;      // empty unless solved
};

struct SolverBudget {
    uint64_t max_expansions = UINT64_MAX;
    double time_limit_s = 0;   // 0 = unlimited
    uint64_t max_states = 0;   // stored-state cap; 0 = unlimited
};

// Forward greedy best-first search over pushes, smallest heuristic first with
// FIFO tie-breaking, duplicate detection on canonical states and optional
// dead-square pruning. The plan is replay-validated before Solved is
// returned.
SolveOutcome gbfs_solve(const Maze& maze, const SokobanState& start,
                        const std::function<int64_t(const SokobanState&)>& heuristic,
                        const SolverBudget& budget, bool prune_dead = true);

enum class OracleStatus { Optimal, Unsolvable, CapExceeded };

struct OracleResult {
    OracleStatus status = OracleStatus::Unsolvable;
    int64_t pushes = -1;
    uint64_t explored = 0;

    bool solvable() const { return status == OracleStatus::Optimal; }
};

// Exact minimal push count by uniform-cost (breadth-first) search over
// canonical states. Intended for desk-scale instances; `cap` bounds the
// number of stored states.
OracleResult optimal_push_count(const Maze& maze, const SokobanState& start,
                                uint64_t cap = 10'000'000);

// Replays `plan` from `start`, returning false when some push is illegal or
// the final state is not a goal state.
bool validate_plan(const Maze& maze, const SokobanState& start, std::span<const PushMove> plan);

// Expands a push plan into LURD notation (lowercase walk moves, uppercase
// pushes) starting from the given man cell, which must lie in the start
// state's man region.
std::string plan_to_lurd(const Maze& maze, const SokobanState& start, uint16_t man_cell,
                         std::span<const PushMove> plan);

}  // namespace sokogen
