#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sokogen/errors.hpp"

namespace sokogen {

enum class CellKind : uint8_t { Wall, Floor, Goal };

// Fixed enumeration order; move generation and therefore search results
// depend on it, so it must never change.
enum class Direction : uint8_t { Up = 0, Down = 1, Left = 2, Right = 3 };

constexpr int kNumDirections = 4;

Direction opposite(Direction d);
char direction_char(Direction d);  // l/u/r/d

// Immutable maze: rectangular wall/floor/goal grid with dense floor-cell ids
// (row-major), per-cell neighbor table and precomputed dead squares. Cells
// outside the outer walls are stored as walls.
class Maze {
public:
    Maze(int width, int height, std::vector<CellKind> cells);

    int width() const { return width_; }
    int height() const { return height_; }
    CellKind cell(int x, int y) const { return cells_[y * width_ + x]; }

    int num_floors() const { return static_cast<int>(floor_cells_.size()); }
    int floor_x(uint16_t id) const { return floor_cells_[id] % width_; }
    int floor_y(uint16_t id) const { return floor_cells_[id] / width_; }
    int32_t floor_id_at(int x, int y) const { return floor_id_[y * width_ + x]; }

    // Neighbor floor id in direction d, or -1 when it is a wall.
    int32_t neighbor(uint16_t floor, Direction d) const {
        return neighbors_[floor * kNumDirections + static_cast<int>(d)];
    }

    const std::vector<uint16_t>& goals() const { return goal_ids_; }
    int num_goals() const { return static_cast<int>(goal_ids_.size()); }
    bool is_goal(uint16_t floor) const { return goal_mask_[floor] != 0; }

    // A floor cell is dead when no pull sequence from any goal reaches it
    // (single box, empty maze); equivalently no push from it reaches a goal.
    bool is_dead(uint16_t floor) const { return dead_[floor] != 0; }

    // Stable fingerprint of the layout (dimensions, walls, goals); used to
    // key PDB caches.
    uint64_t layout_hash() const { return layout_hash_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<CellKind> cells_;
    std::vector<int32_t> floor_id_;      // per cell, -1 for walls
    std::vector<int32_t> floor_cells_;   // floor id -> cell index
    std::vector<int32_t> neighbors_;     // floor id * 4 + dir
    std::vector<uint16_t> goal_ids_;
    std::vector<uint8_t> goal_mask_;
    std::vector<uint8_t> dead_;
    uint64_t layout_hash_ = 0;
};

// Canonical state: sorted box floor ids (boxes are indistinguishable) plus
// the lowest floor id the man can reach without pushing. Two states whose men
// share a connected free region compare equal.
struct SokobanState {
    std::vector<uint16_t> boxes;
    uint16_t man = 0;

    bool operator==(const SokobanState&) const = default;
};

struct SokobanStateHash {
    size_t operator()(const SokobanState& s) const {
        uint64_t h = 0xcbf29ce484222325ull;
        auto mix = [&h](uint16_t v) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        for (uint16_t b : s.boxes)
            mix(b);
        mix(static_cast<uint16_t>(s.man + 1));
        return static_cast<size_t>(h);
    }
};

struct PushMove {
    uint16_t box;  // source floor id
    Direction dir;
    bool operator==(const PushMove&) const = default;
};

struct PullMove {
    uint16_t box;  // source floor id
    Direction dir;
    bool operator==(const PullMove&) const = default;
};

// Flood-fills the free cells reachable from `start` with the given boxes in
// place. `in_region` is resized to the maze's floor count. Returns the lowest
// reachable floor id (the canonical man cell).
uint16_t man_region(const Maze& maze, std::span<const uint16_t> boxes, uint16_t start,
                    std::vector<uint8_t>& in_region);

// Convenience overload when only the canonical cell is needed.
uint16_t canonical_man(const Maze& maze, std::span<const uint16_t> boxes, uint16_t start);

// Forward moves: man pushes a box one cell. With `prune_dead`, pushes landing
// on dead squares are dropped (evaluation solver only; never sound to use
// backward).
std::vector<std::pair<SokobanState, PushMove>> legal_pushes(const Maze& maze,
                                                            const SokobanState& state,
                                                            bool prune_dead = false);

// Backward moves: exact inverses of pushes. A pull moves the box from c to
// m = neighbor(c, dir) and the man from m to m' = neighbor(m, dir); both m and
// m' must be free and man-reachable.
std::vector<std::pair<SokobanState, PullMove>> legal_pulls(const Maze& maze,
                                                           const SokobanState& state);

// All-boxes-on-goals states, one per connected component of the remaining
// free space. Throws NoFreeCell when the goals cover every floor cell.
std::vector<SokobanState> goal_states(const Maze& maze);

bool is_goal_state(const Maze& maze, const SokobanState& state);

// The precomputed dead-square set as floor ids (ascending).
std::vector<uint16_t> dead_squares(const Maze& maze);

struct ParsedLevel {
    Maze maze;
    SokobanState state;
    uint16_t man_cell = 0;  // original (pre-canonicalization) man floor id
    std::string name;
};

// XSB text: '#' wall, ' ' floor, '.' goal, '$' box, '*' box on goal,
// '@' man, '+' man on goal. Spaces outside the outer walls become walls; a
// wall ring is added when content touches the text boundary.
ParsedLevel parse_xsb(const std::string& text);

// Canonical emission: man rendered at its canonical cell; parse(emit(m, s))
// reproduces (m, s) exactly.
std::string emit_xsb(const Maze& maze, const SokobanState& state);

// Domain adapter used by the generic search/PDB/novelty code.
class SokobanDomain {
public:
    using State = SokobanState;
    using Hash = SokobanStateHash;

    explicit SokobanDomain(Maze maze) : maze_(std::move(maze)) {}

    const Maze& maze() const { return maze_; }

    // One variable per box plus one for the man.
    int num_variables() const { return maze_.num_goals() + 1; }
    int num_pattern_variables() const { return maze_.num_goals(); }

    std::vector<SokobanState> goal_states() const { return sokogen::goal_states(maze_); }
    bool is_goal(const SokobanState& s) const { return is_goal_state(maze_, s); }

    std::vector<SokobanState> successors(const SokobanState& s) const;
    std::vector<SokobanState> predecessors(const SokobanState& s) const;

    // Occupancy facts: one per box cell plus one for the man's canonical cell.
    void facts(const SokobanState& s, std::vector<int64_t>& out) const;

private:
    Maze maze_;
};

}  // namespace sokogen
