#include "sokogen/sokoban.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace sokogen {

Direction opposite(Direction d) {
    switch (d) {
    case Direction::Up: return Direction::Down;
    case Direction::Down: return Direction::Up;
    case Direction::Left: return Direction::Right;
    case Direction::Right: return Direction::Left;
    }
    return Direction::Up;
}

char direction_char(Direction d) {
    switch (d) {
    case Direction::Up: return 'u';
    case Direction::Down: return 'd';
    case Direction::Left: return 'l';
    case Direction::Right: return 'r';
    }
    return '?';
}

namespace {

// Cell deltas matching the Direction enum order.
constexpr int kDx[kNumDirections] = {0, 0, -1, 1};
constexpr int kDy[kNumDirections] = {-1, 1, 0, 0};

std::vector<uint8_t> compute_dead_squares(int num_floors,
                                          const std::vector<int32_t>& neighbors,
                                          const std::vector<uint16_t>& goals) {
    // Multi-source pull reachability: one box, empty maze, man ignored. A box
    // at c can be pulled to m iff both m and the cell beyond m are floor.
    std::vector<uint8_t> alive(num_floors, 0);
    std::deque<uint16_t> queue;
    for (uint16_t g : goals) {
        alive[g] = 1;
        queue.push_back(g);
    }
    while (!queue.empty()) {
        uint16_t c = queue.front();
        queue.pop_front();
        for (int d = 0; d < kNumDirections; ++d) {
            int32_t m = neighbors[c * kNumDirections + d];
            if (m < 0 || alive[m])
                continue;
            int32_t beyond = neighbors[m * kNumDirections + d];
            if (beyond < 0)
                continue;
            alive[m] = 1;
            queue.push_back(static_cast<uint16_t>(m));
        }
    }
    std::vector<uint8_t> dead(num_floors, 0);
    for (int i = 0; i < num_floors; ++i)
        dead[i] = alive[i] ? 0 : 1;
    return dead;
}

}  // namespace

Maze::Maze(int width, int height, std::vector<CellKind> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
    floor_id_.assign(cells_.size(), -1);
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            int idx = y * width_ + x;
            if (cells_[idx] != CellKind::Wall) {
                floor_id_[idx] = static_cast<int32_t>(floor_cells_.size());
                floor_cells_.push_back(idx);
            }
        }
    }

    neighbors_.assign(floor_cells_.size() * kNumDirections, -1);
    for (size_t id = 0; id < floor_cells_.size(); ++id) {
        int x = floor_cells_[id] % width_;
        int y = floor_cells_[id] / width_;
        for (int d = 0; d < kNumDirections; ++d) {
            int nx = x + kDx[d];
            int ny = y + kDy[d];
            if (nx < 0 || nx >= width_ || ny < 0 || ny >= height_)
                continue;
            neighbors_[id * kNumDirections + d] = floor_id_[ny * width_ + nx];
        }
    }

    goal_mask_.assign(floor_cells_.size(), 0);
    for (size_t id = 0; id < floor_cells_.size(); ++id) {
        if (cells_[floor_cells_[id]] == CellKind::Goal) {
            goal_ids_.push_back(static_cast<uint16_t>(id));
            goal_mask_[id] = 1;
        }
    }

    dead_ = compute_dead_squares(num_floors(), neighbors_, goal_ids_);

    uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ull;
    };
    mix(static_cast<uint64_t>(width_));
    mix(static_cast<uint64_t>(height_));
    for (CellKind c : cells_)
        mix(static_cast<uint64_t>(c) + 1);
    layout_hash_ = h;
}

uint16_t man_region(const Maze& maze, std::span<const uint16_t> boxes, uint16_t start,
                    std::vector<uint8_t>& in_region) {
    in_region.assign(maze.num_floors(), 0);
    for (uint16_t b : boxes)
        in_region[b] = 2;  // blocked
    uint16_t best = start;
    std::vector<uint16_t> stack;
    stack.push_back(start);
    in_region[start] = 1;
    while (!stack.empty()) {
        uint16_t c = stack.back();
        stack.pop_back();
        if (c < best)
            best = c;
        for (int d = 0; d < kNumDirections; ++d) {
            int32_t n = maze.neighbor(c, static_cast<Direction>(d));
            if (n >= 0 && in_region[n] == 0) {
                in_region[n] = 1;
                stack.push_back(static_cast<uint16_t>(n));
            }
        }
    }
    for (uint16_t b : boxes)
        in_region[b] = 0;
    return best;
}

uint16_t canonical_man(const Maze& maze, std::span<const uint16_t> boxes, uint16_t start) {
    std::vector<uint8_t> scratch;
    return man_region(maze, boxes, start, scratch);
}

namespace {

// Replaces box `from` with `to`, keeping the list sorted.
std::vector<uint16_t> move_box(const std::vector<uint16_t>& boxes, uint16_t from, uint16_t to) {
    std::vector<uint16_t> out;
    out.reserve(boxes.size());
    for (uint16_t b : boxes)
        if (b != from)
            out.push_back(b);
    out.insert(std::lower_bound(out.begin(), out.end(), to), to);
    return out;
}

}  // namespace

std::vector<std::pair<SokobanState, PushMove>> legal_pushes(const Maze& maze,
                                                            const SokobanState& state,
                                                            bool prune_dead) {
    std::vector<std::pair<SokobanState, PushMove>> result;
    if (state.boxes.empty())
        return result;
    std::vector<uint8_t> region;
    man_region(maze, state.boxes, state.man, region);
    std::vector<uint8_t> box_mask(maze.num_floors(), 0);
    for (uint16_t b : state.boxes)
        box_mask[b] = 1;

    for (uint16_t b : state.boxes) {
        for (int d = 0; d < kNumDirections; ++d) {
            Direction dir = static_cast<Direction>(d);
            int32_t target = maze.neighbor(b, dir);
            if (target < 0 || box_mask[target])
                continue;
            if (prune_dead && maze.is_dead(static_cast<uint16_t>(target)))
                continue;
            int32_t staging = maze.neighbor(b, opposite(dir));
            if (staging < 0 || box_mask[staging] || !region[staging])
                continue;
            SokobanState next;
            next.boxes = move_box(state.boxes, b, static_cast<uint16_t>(target));
            next.man = canonical_man(maze, next.boxes, b);
            result.emplace_back(std::move(next), PushMove{b, dir});
        }
    }
    return result;
}

std::vector<std::pair<SokobanState, PullMove>> legal_pulls(const Maze& maze,
                                                           const SokobanState& state) {
    std::vector<std::pair<SokobanState, PullMove>> result;
    if (state.boxes.empty())
        return result;
    std::vector<uint8_t> region;
    man_region(maze, state.boxes, state.man, region);
    std::vector<uint8_t> box_mask(maze.num_floors(), 0);
    for (uint16_t b : state.boxes)
        box_mask[b] = 1;

    for (uint16_t b : state.boxes) {
        for (int d = 0; d < kNumDirections; ++d) {
            Direction dir = static_cast<Direction>(d);
            int32_t m = maze.neighbor(b, dir);
            if (m < 0 || box_mask[m] || !region[m])
                continue;
            int32_t beyond = maze.neighbor(static_cast<uint16_t>(m), dir);
            if (beyond < 0 || box_mask[beyond])
                continue;
            // region[m] implies region[beyond]: it is free and adjacent.
            SokobanState next;
            next.boxes = move_box(state.boxes, b, static_cast<uint16_t>(m));
            next.man = canonical_man(maze, next.boxes, static_cast<uint16_t>(beyond));
            result.emplace_back(std::move(next), PullMove{b, dir});
        }
    }
    return result;
}

std::vector<SokobanState> goal_states(const Maze& maze) {
    std::vector<SokobanState> result;
    const std::vector<uint16_t>& goals = maze.goals();
    if (static_cast<int>(goals.size()) >= maze.num_floors())
        throw NoFreeCell("goal cells cover the entire floor; no room for the man");

    std::vector<uint8_t> box_mask(maze.num_floors(), 0);
    for (uint16_t g : goals)
        box_mask[g] = 1;
    std::vector<uint8_t> seen(maze.num_floors(), 0);
    std::vector<uint8_t> scratch;
    for (int c = 0; c < maze.num_floors(); ++c) {
        if (box_mask[c] || seen[c])
            continue;
        uint16_t rep = man_region(maze, goals, static_cast<uint16_t>(c), scratch);
        for (int i = 0; i < maze.num_floors(); ++i)
            if (scratch[i])
                seen[i] = 1;
        SokobanState s;
        s.boxes = goals;
        s.man = rep;
        result.push_back(std::move(s));
    }
    return result;
}

bool is_goal_state(const Maze& maze, const SokobanState& state) {
    for (uint16_t b : state.boxes)
        if (!maze.is_goal(b))
            return false;
    return state.boxes.size() == maze.goals().size();
}

std::vector<uint16_t> dead_squares(const Maze& maze) {
    std::vector<uint16_t> result;
    for (int id = 0; id < maze.num_floors(); ++id)
        if (maze.is_dead(static_cast<uint16_t>(id)))
            result.push_back(static_cast<uint16_t>(id));
    return result;
}

namespace {

struct RawGrid {
    std::vector<std::string> rows;
    int width = 0;
};

RawGrid read_rows(const std::string& text) {
    RawGrid grid;
    std::string row;
    std::istringstream in(text);
    while (std::getline(in, row)) {
        if (!row.empty() && row.back() == '\r')
            row.pop_back();
        grid.rows.push_back(row);
        grid.width = std::max(grid.width, static_cast<int>(row.size()));
    }
    while (!grid.rows.empty() && grid.rows.back().empty())
        grid.rows.pop_back();
    for (std::string& r : grid.rows)
        r.resize(grid.width, ' ');
    return grid;
}

}  // namespace

ParsedLevel parse_xsb(const std::string& text) {
    RawGrid grid = read_rows(text);
    const int h = static_cast<int>(grid.rows.size());
    const int w = grid.width;
    if (h == 0 || w == 0)
        throw ParseError("empty level");

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            char c = grid.rows[y][x];
            if (c != '#' && c != ' ' && c != '.' && c != '$' && c != '*' && c != '@' && c != '+')
                throw ParseError(std::string("unknown character '") + c + "' at row " +
                                 std::to_string(y + 1) + ", column " + std::to_string(x + 1));
        }
    }

    // Spaces connected to the text boundary are outside the maze.
    std::vector<uint8_t> exterior(w * h, 0);
    std::vector<int> stack;
    auto push_if_space = [&](int x, int y) {
        int idx = y * w + x;
        if (!exterior[idx] && grid.rows[y][x] == ' ') {
            exterior[idx] = 1;
            stack.push_back(idx);
        }
    };
    for (int x = 0; x < w; ++x) {
        push_if_space(x, 0);
        push_if_space(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        push_if_space(0, y);
        push_if_space(w - 1, y);
    }
    while (!stack.empty()) {
        int idx = stack.back();
        stack.pop_back();
        int x = idx % w;
        int y = idx / w;
        for (int d = 0; d < kNumDirections; ++d) {
            int nx = x + kDx[d];
            int ny = y + kDy[d];
            if (nx >= 0 && nx < w && ny >= 0 && ny < h)
                push_if_space(nx, ny);
        }
    }

    bool needs_ring = false;
    for (int y = 0; y < h && !needs_ring; ++y)
        for (int x = 0; x < w && !needs_ring; ++x)
            if ((y == 0 || y == h - 1 || x == 0 || x == w - 1) && grid.rows[y][x] != '#' &&
                !exterior[y * w + x])
                needs_ring = true;

    const int pad = needs_ring ? 1 : 0;
    const int mw = w + 2 * pad;
    const int mh = h + 2 * pad;
    std::vector<CellKind> cells(mw * mh, CellKind::Wall);

    std::vector<std::pair<int, int>> boxes_xy;
    std::vector<std::pair<int, int>> men_xy;
    int goal_count = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            char c = grid.rows[y][x];
            if (exterior[y * w + x] || c == '#')
                continue;
            CellKind kind = (c == '.' || c == '*' || c == '+') ? CellKind::Goal : CellKind::Floor;
            cells[(y + pad) * mw + (x + pad)] = kind;
            if (kind == CellKind::Goal)
                ++goal_count;
            if (c == '$' || c == '*')
                boxes_xy.emplace_back(x + pad, y + pad);
            if (c == '@' || c == '+')
                men_xy.emplace_back(x + pad, y + pad);
        }
    }

    if (men_xy.empty())
        throw NoMan("level has no man");
    if (men_xy.size() > 1)
        throw MultipleMen("level has " + std::to_string(men_xy.size()) + " men");
    if (static_cast<int>(boxes_xy.size()) != goal_count)
        throw CountMismatch("level has " + std::to_string(boxes_xy.size()) + " boxes but " +
                            std::to_string(goal_count) + " goals");

    Maze maze(mw, mh, std::move(cells));

    SokobanState state;
    for (auto [x, y] : boxes_xy) {
        int32_t id = maze.floor_id_at(x, y);
        state.boxes.push_back(static_cast<uint16_t>(id));
    }
    std::sort(state.boxes.begin(), state.boxes.end());

    int32_t man_id = maze.floor_id_at(men_xy[0].first, men_xy[0].second);
    state.man = canonical_man(maze, state.boxes, static_cast<uint16_t>(man_id));

    ParsedLevel level{std::move(maze), std::move(state), static_cast<uint16_t>(man_id), ""};
    return level;
}

std::string emit_xsb(const Maze& maze, const SokobanState& state) {
    std::vector<std::string> rows(maze.height(), std::string(maze.width(), ' '));
    for (int y = 0; y < maze.height(); ++y)
        for (int x = 0; x < maze.width(); ++x)
            rows[y][x] = maze.cell(x, y) == CellKind::Wall ? '#'
                         : maze.cell(x, y) == CellKind::Goal ? '.'
                                                             : ' ';
    for (uint16_t b : state.boxes) {
        int x = maze.floor_x(b);
        int y = maze.floor_y(b);
        rows[y][x] = maze.is_goal(b) ? '*' : '$';
    }
    {
        int x = maze.floor_x(state.man);
        int y = maze.floor_y(state.man);
        rows[y][x] = maze.is_goal(state.man) ? '+' : '@';
    }
    std::string out;
    for (const std::string& r : rows) {
        out += r;
        out += '\n';
    }
    return out;
}

std::vector<SokobanState> SokobanDomain::successors(const SokobanState& s) const {
    auto moves = legal_pushes(maze_, s, /*prune_dead=*/false);
    std::vector<SokobanState> result;
    result.reserve(moves.size());
    std::unordered_set<SokobanState, SokobanStateHash> seen;
    for (auto& [state, move] : moves)
        if (seen.insert(state).second)
            result.push_back(std::move(state));
    return result;
}

std::vector<SokobanState> SokobanDomain::predecessors(const SokobanState& s) const {
    auto moves = legal_pulls(maze_, s);
    std::vector<SokobanState> result;
    result.reserve(moves.size());
    std::unordered_set<SokobanState, SokobanStateHash> seen;
    for (auto& [state, move] : moves)
        if (seen.insert(state).second)
            result.push_back(std::move(state));
    return result;
}

void SokobanDomain::facts(const SokobanState& s, std::vector<int64_t>& out) const {
    out.clear();
    out.reserve(s.boxes.size() + 1);
    for (uint16_t b : s.boxes)
        out.push_back(b);
    out.push_back((int64_t{1} << 32) | s.man);
}

}  // namespace sokogen
