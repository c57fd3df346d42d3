#include "sokogen/solver.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <deque>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace sokogen {

const char* to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::Exhausted: return "exhausted";
    case SolveStatus::TimedOut: return "timed_out";
    case SolveStatus::MemoryOut: return "memory_out";
    }
    return "?";
}

namespace {

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

struct Node {
    SokobanState state;
    int32_t parent;  // index into the arena, -1 for the root
    PushMove move;
};

std::vector<PushMove> extract_plan(const std::vector<Node>& arena, int32_t leaf) {
    std::vector<PushMove> plan;
    for (int32_t i = leaf; arena[i].parent >= 0; i = arena[i].parent)
        plan.push_back(arena[i].move);
    std::reverse(plan.begin(), plan.end());
    return plan;
}

}  // namespace

bool validate_plan(const Maze& maze, const SokobanState& start, std::span<const PushMove> plan) {
    SokobanState current = start;
    for (const PushMove& move : plan) {
        bool applied = false;
        for (auto& [next, candidate] : legal_pushes(maze, current)) {
            if (candidate == move) {
                current = std::move(next);
                applied = true;
                break;
            }
        }
        if (!applied)
            return false;
    }
    return is_goal_state(maze, current);
}

SolveOutcome gbfs_solve(const Maze& maze, const SokobanState& start,
                        const std::function<int64_t(const SokobanState&)>& heuristic,
                        const SolverBudget& budget, bool prune_dead) {
    Clock clock;
    SolveOutcome outcome;

    struct Entry {
        int64_t h;
        uint64_t order;
        int32_t node;
    };
    struct Worse {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.h != b.h)
                return a.h > b.h;
            return a.order > b.order;
        }
    };

    std::vector<Node> arena;
    std::unordered_set<SokobanState, SokobanStateHash> closed;
    std::priority_queue<Entry, std::vector<Entry>, Worse> open;
    uint64_t order = 0;

    arena.push_back({start, -1, {}});
    closed.insert(start);
    open.push({heuristic(start), order++, 0});

    // Exhausted = open emptied; budget trips map to TimedOut (the expansion
    // cap is the reproducible stand-in for a wall-clock limit) or MemoryOut.
    while (!open.empty()) {
        if (outcome.expansions >= budget.max_expansions) {
            outcome.status = SolveStatus::TimedOut;
            break;
        }
        if (budget.max_states && closed.size() >= budget.max_states) {
            outcome.status = SolveStatus::MemoryOut;
            break;
        }
        if (budget.time_limit_s > 0 && (outcome.expansions & 63) == 0 &&
            clock.seconds() >= budget.time_limit_s) {
            outcome.status = SolveStatus::TimedOut;
            break;
        }

        int32_t node = open.top().node;
        open.pop();
        ++outcome.expansions;

        if (is_goal_state(maze, arena[node].state)) {
            std::vector<PushMove> plan = extract_plan(arena, node);
            if (validate_plan(maze, start, plan)) {
                outcome.status = SolveStatus::Solved;
                outcome.pushes = static_cast<int64_t>(plan.size());
                outcome.plan = std::move(plan);
            }
            break;
        }

        for (auto& [next, move] : legal_pushes(maze, arena[node].state, prune_dead)) {
            if (!closed.insert(next).second)
                continue;
            arena.push_back({std::move(next), node, move});
            open.push({heuristic(arena.back().state), order++, static_cast<int32_t>(arena.size() - 1)});
        }
    }

    outcome.wall_ms = clock.seconds() * 1e3;
    return outcome;
}

OracleResult optimal_push_count(const Maze& maze, const SokobanState& start, uint64_t cap) {
    OracleResult result;
    if (is_goal_state(maze, start)) {
        result.status = OracleStatus::Optimal;
        result.pushes = 0;
        return result;
    }

    std::unordered_map<SokobanState, int64_t, SokobanStateHash> depth;
    std::deque<const SokobanState*> queue;
    auto [it, inserted] = depth.emplace(start, 0);
    queue.push_back(&it->first);

    while (!queue.empty()) {
        const SokobanState& state = *queue.front();
        queue.pop_front();
        int64_t d = depth.at(state);
        ++result.explored;
        for (auto& [next, move] : legal_pushes(maze, state)) {
            auto [nit, fresh] = depth.emplace(std::move(next), d + 1);
            if (!fresh)
                continue;
            if (is_goal_state(maze, nit->first)) {
                result.status = OracleStatus::Optimal;
                result.pushes = d + 1;
                return result;
            }
            if (depth.size() > cap) {
                result.status = OracleStatus::CapExceeded;
                return result;
            }
            queue.push_back(&nit->first);
        }
    }
    result.status = OracleStatus::Unsolvable;
    return result;
}

namespace {

// Shortest man walk between two cells with boxes fixed; returns false when
// unreachable.
bool man_path(const Maze& maze, std::span<const uint16_t> boxes, uint16_t from, uint16_t to,
              std::string& out) {
    if (from == to)
        return true;
    std::vector<uint8_t> blocked(maze.num_floors(), 0);
    for (uint16_t b : boxes)
        blocked[b] = 1;
    std::vector<int32_t> parent(maze.num_floors(), -1);
    std::vector<int8_t> via(maze.num_floors(), -1);
    std::deque<uint16_t> queue;
    parent[from] = from;
    queue.push_back(from);
    while (!queue.empty()) {
        uint16_t c = queue.front();
        queue.pop_front();
        for (int d = 0; d < kNumDirections; ++d) {
            int32_t n = maze.neighbor(c, static_cast<Direction>(d));
            if (n < 0 || blocked[n] || parent[n] >= 0)
                continue;
            parent[n] = c;
            via[n] = static_cast<int8_t>(d);
            if (n == to) {
                std::string path;
                for (int32_t cur = n; cur != from; cur = parent[cur])
                    path += direction_char(static_cast<Direction>(via[cur]));
                std::reverse(path.begin(), path.end());
                out += path;
                return true;
            }
            queue.push_back(static_cast<uint16_t>(n));
        }
    }
    return false;
}

}  // namespace

std::string plan_to_lurd(const Maze& maze, const SokobanState& start, uint16_t man_cell,
                         std::span<const PushMove> plan) {
    std::string lurd;
    std::vector<uint16_t> boxes = start.boxes;
    uint16_t man = man_cell;
    for (const PushMove& move : plan) {
        int32_t staging = maze.neighbor(move.box, opposite(move.dir));
        int32_t target = maze.neighbor(move.box, move.dir);
        if (staging < 0 || target < 0)
            throw NotApplicable("push move leaves the maze");
        if (!man_path(maze, boxes, man, static_cast<uint16_t>(staging), lurd))
            throw NotApplicable("man cannot reach the staging cell for a push");
        lurd += static_cast<char>(std::toupper(direction_char(move.dir)));
        auto it = std::find(boxes.begin(), boxes.end(), move.box);
        if (it == boxes.end())
            throw NotApplicable("push move names a cell without a box");
        boxes.erase(it);
        boxes.insert(std::lower_bound(boxes.begin(), boxes.end(), static_cast<uint16_t>(target)),
                     static_cast<uint16_t>(target));
        man = move.box;
    }
    return lurd;
}

}  // namespace sokogen
