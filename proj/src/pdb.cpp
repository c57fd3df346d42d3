#include "sokogen/pdb.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "sokogen/rng.hpp"

namespace sokogen {

std::vector<PatternCollection> sample_pattern_collections(int num_vars, int pattern_size,
                                                          int count, uint64_t seed) {
    if (pattern_size < 1)
        throw InvalidK("pattern size must be >= 1, got " + std::to_string(pattern_size));
    if (count < 1)
        throw InvalidK("collection count must be >= 1, got " + std::to_string(count));

    Rng rng(seed);
    std::vector<PatternCollection> collections;
    collections.reserve(count);
    std::vector<int32_t> vars(num_vars);
    for (int c = 0; c < count; ++c) {
        std::iota(vars.begin(), vars.end(), 0);
        // Fisher-Yates; drawing blocks off a uniform shuffle selects k'
        // variables at a time without replacement.
        for (int i = num_vars - 1; i > 0; --i) {
            int j = static_cast<int>(rng.below(static_cast<uint64_t>(i) + 1));
            std::swap(vars[i], vars[j]);
        }
        PatternCollection collection;
        for (int begin = 0; begin < num_vars; begin += pattern_size) {
            int end = std::min(begin + pattern_size, num_vars);
            Pattern p(vars.begin() + begin, vars.begin() + end);
            std::sort(p.begin(), p.end());
            collection.push_back(std::move(p));
        }
        std::sort(collection.begin(), collection.end());
        collections.push_back(std::move(collection));
    }
    return collections;
}

namespace {

SokobanState to_concrete(const BoxPatternState& s) {
    SokobanState out;
    out.boxes.assign(s.cells.begin(), s.cells.begin() + s.n);
    out.man = s.man;
    return out;
}

BoxPatternState to_pattern_state(const SokobanState& s) {
    BoxPatternState out;
    out.n = static_cast<uint8_t>(s.boxes.size());
    std::copy(s.boxes.begin(), s.boxes.end(), out.cells.begin());
    out.man = s.man;
    return out;
}

bool pattern_state_less(const std::pair<BoxPatternState, int32_t>& a,
                        const std::pair<BoxPatternState, int32_t>& b) {
    if (a.first.n != b.first.n)
        return a.first.n < b.first.n;
    if (a.first.cells != b.first.cells)
        return a.first.cells < b.first.cells;
    return a.first.man < b.first.man;
}

// All placements of `n` boxes on goal cells, each split into one state per
// free-space component.
std::vector<BoxPatternState> abstract_goal_states(const Maze& maze, int n) {
    std::vector<BoxPatternState> result;
    const auto& goals = maze.goals();
    const int g = static_cast<int>(goals.size());
    if (n > g)
        return result;

    std::vector<int> pick(n);
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<uint16_t> cells(n);
    std::vector<uint8_t> scratch;
    for (;;) {
        for (int i = 0; i < n; ++i)
            cells[i] = goals[pick[i]];

        std::vector<uint8_t> covered(maze.num_floors(), 0);
        for (uint16_t c : cells)
            covered[c] = 1;
        std::vector<uint8_t> seen(maze.num_floors(), 0);
        for (int start = 0; start < maze.num_floors(); ++start) {
            if (covered[start] || seen[start])
                continue;
            uint16_t rep = man_region(maze, cells, static_cast<uint16_t>(start), scratch);
            for (int i = 0; i < maze.num_floors(); ++i)
                if (scratch[i])
                    seen[i] = 1;
            BoxPatternState s;
            s.n = static_cast<uint8_t>(n);
            std::copy(cells.begin(), cells.end(), s.cells.begin());
            s.man = rep;
            result.push_back(s);
        }

        // next combination
        int i = n - 1;
        while (i >= 0 && pick[i] == g - n + i)
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < n; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return result;
}

}  // namespace

BoxPatternTable::BoxPatternTable(const Maze& maze, int num_boxes, size_t eager_cap,
                                 bool allow_lazy)
    : maze_(&maze), num_boxes_(num_boxes) {
    if (num_boxes < 1 || num_boxes > kMaxPatternBoxes)
        throw InvalidK("pattern box count out of range: " + std::to_string(num_boxes));

    std::deque<BoxPatternState> queue;
    for (const BoxPatternState& g : abstract_goal_states(maze, num_boxes)) {
        if (dist_.emplace(g, 0).second)
            queue.push_back(g);
    }
    while (!queue.empty()) {
        BoxPatternState s = queue.front();
        queue.pop_front();
        int32_t d = dist_.at(s);
        for (auto& [next, move] : legal_pulls(maze, to_concrete(s))) {
            BoxPatternState ns = to_pattern_state(next);
            if (dist_.emplace(ns, d + 1).second) {
                if (dist_.size() > eager_cap) {
                    if (!allow_lazy)
                        throw BudgetExceeded("abstract space for " + std::to_string(num_boxes) +
                                             "-box pattern exceeds cap of " +
                                             std::to_string(eager_cap));
                    dist_.clear();
                    lazy_ = true;
                    return;
                }
                queue.push_back(ns);
            }
        }
    }
}

BoxPatternTable::BoxPatternTable(const Maze& maze, int num_boxes,
                                 std::vector<std::pair<BoxPatternState, int32_t>> entries)
    : maze_(&maze), num_boxes_(num_boxes) {
    dist_.reserve(entries.size());
    for (auto& [state, d] : entries)
        dist_.emplace(state, d);
}

int64_t BoxPatternTable::distance(const BoxPatternState& s) const {
    if (!lazy_) {
        auto it = dist_.find(s);
        return it == dist_.end() ? kUnreachable : it->second;
    }
    return lazy_distance(s);
}

int64_t BoxPatternTable::lazy_distance(const BoxPatternState& s) const {
    {
        std::lock_guard lock(memo_mutex_);
        auto it = memo_.find(s);
        if (it != memo_.end())
            return it->second;
    }
    // Forward push BFS from the query state until some all-on-goals placement.
    std::unordered_map<BoxPatternState, int32_t, BoxPatternStateHash> depth;
    std::deque<BoxPatternState> queue;
    depth.emplace(s, 0);
    queue.push_back(s);
    int64_t result = kUnreachable;
    while (!queue.empty()) {
        BoxPatternState cur = queue.front();
        queue.pop_front();
        int32_t d = depth.at(cur);
        SokobanState concrete = to_concrete(cur);
        if (std::all_of(concrete.boxes.begin(), concrete.boxes.end(),
                        [this](uint16_t b) { return maze_->is_goal(b); })) {
            result = d;
            break;
        }
        for (auto& [next, move] : legal_pushes(*maze_, concrete)) {
            BoxPatternState ns = to_pattern_state(next);
            if (depth.emplace(ns, d + 1).second)
                queue.push_back(ns);
        }
    }
    std::lock_guard lock(memo_mutex_);
    memo_.emplace(s, static_cast<int32_t>(result));
    return result;
}

std::vector<std::pair<BoxPatternState, int32_t>> BoxPatternTable::sorted_entries() const {
    std::vector<std::pair<BoxPatternState, int32_t>> out(dist_.begin(), dist_.end());
    std::sort(out.begin(), out.end(), pattern_state_less);
    return out;
}

std::shared_ptr<const BoxPatternTable> BoxTableStore::table(int num_boxes) const {
    std::lock_guard lock(mutex_);
    auto it = tables_.find(num_boxes);
    if (it != tables_.end())
        return it->second;
    auto table = std::make_shared<BoxPatternTable>(*maze_, num_boxes, eager_cap_);
    tables_.emplace(num_boxes, table);
    return table;
}

void BoxTableStore::adopt(int num_boxes, std::shared_ptr<const BoxPatternTable> table) const {
    std::lock_guard lock(mutex_);
    tables_[num_boxes] = std::move(table);
}

std::vector<std::pair<int, std::shared_ptr<const BoxPatternTable>>> BoxTableStore::snapshot()
    const {
    std::lock_guard lock(mutex_);
    std::vector<std::pair<int, std::shared_ptr<const BoxPatternTable>>> out(tables_.begin(),
                                                                            tables_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

BoxPatternState project_state(const Maze& maze, const SokobanState& state,
                              std::span<const int32_t> pattern) {
    BoxPatternState out;
    out.n = static_cast<uint8_t>(pattern.size());
    for (size_t i = 0; i < pattern.size(); ++i)
        out.cells[i] = state.boxes[pattern[i]];
    // Slots are sorted and boxes are sorted by cell, so cells arrive sorted.
    out.man = canonical_man(maze, std::span<const uint16_t>(out.cells.data(), out.n), state.man);
    return out;
}

SokobanAdditivePdb::SokobanAdditivePdb(std::shared_ptr<const BoxTableStore> store,
                                       PatternCollection collection)
    : store_(std::move(store)), collection_(std::move(collection)) {
    tables_.reserve(collection_.size());
    for (const Pattern& p : collection_)
        tables_.push_back(store_->table(static_cast<int>(p.size())));
}

int64_t SokobanAdditivePdb::value(const SokobanState& state) const {
    int64_t sum = 0;
    for (size_t i = 0; i < collection_.size(); ++i) {
        BoxPatternState abstract = project_state(store_->maze(), state, collection_[i]);
        sum = saturated_add(sum, tables_[i]->distance(abstract));
        if (sum >= kUnreachable)
            return kUnreachable;
    }
    return sum;
}

SokobanAdditivePdb build_additive_pdb(std::shared_ptr<const BoxTableStore> store,
                                      PatternCollection collection) {
    return SokobanAdditivePdb(std::move(store), std::move(collection));
}

SokobanMaxPdb::SokobanMaxPdb(std::shared_ptr<const BoxTableStore> store, int pattern_size,
                             int num_collections, uint64_t seed)
    : pattern_size_(pattern_size) {
    const int num_vars = store->maze().num_goals();
    auto sampled = sample_pattern_collections(num_vars, pattern_size, num_collections, seed);
    std::set<PatternCollection> distinct(sampled.begin(), sampled.end());
    pdbs_.reserve(distinct.size());
    for (const PatternCollection& c : distinct)
        pdbs_.emplace_back(store, c);
}

int64_t SokobanMaxPdb::value(const SokobanState& state) const {
    int64_t best = 0;
    for (const SokobanAdditivePdb& pdb : pdbs_)
        best = std::max(best, pdb.value(state));
    return best;
}

SokobanHeuristicBundle::SokobanHeuristicBundle(const Maze& maze, uint64_t seed, int max_k,
                                               size_t eager_cap)
    : SokobanHeuristicBundle(std::make_shared<BoxTableStore>(maze, eager_cap), seed, max_k) {}

SokobanHeuristicBundle::SokobanHeuristicBundle(std::shared_ptr<const BoxTableStore> store,
                                               uint64_t seed, int max_k)
    : seed_(seed), store_(std::move(store)) {
    const int num_collections = store_->maze().num_goals() + 2;  // |V|+1 with |V| = boxes + man
    heuristics_.reserve(max_k);
    for (int k = 1; k <= max_k; ++k)
        heuristics_.emplace_back(store_, k, num_collections,
                                 derive_seed(seed, kStreamCollections, static_cast<uint64_t>(k)));
}

int64_t SokobanHeuristicBundle::h(int k, const SokobanState& state) const {
    if (k < 1 || k > max_k())
        throw InvalidK("h^PDBk out of range: k=" + std::to_string(k));
    return heuristics_[k - 1].value(state);
}

int64_t SokobanHeuristicBundle::conflicts(int k, const SokobanState& state) const {
    if (k < 2 || k > max_k())
        throw InvalidK("conflicts order out of range: k=" + std::to_string(k));
    return conflict_order_value(h(k, state), h(k - 1, state));
}

// ---------------------------------------------------------------------------
// Toy-domain tables
// ---------------------------------------------------------------------------

ToyPatternTable::ToyPatternTable(const GroundDomain& domain, Pattern pattern)
    : pattern_(std::move(pattern)) {
    GroundDomain abstract = domain.project(pattern_);
    std::deque<Assignment> queue;
    for (const Assignment& g : abstract.goal_states()) {
        if (dist_.emplace(g, 0).second)
            queue.push_back(g);
    }
    while (!queue.empty()) {
        Assignment s = queue.front();
        queue.pop_front();
        int32_t d = dist_.at(s);
        for (const Assignment& prev : abstract.predecessors(s)) {
            if (dist_.emplace(prev, d + 1).second)
                queue.push_back(prev);
        }
    }
}

int64_t ToyPatternTable::distance_of_abstract(const Assignment& abstract_state) const {
    auto it = dist_.find(abstract_state);
    return it == dist_.end() ? kUnreachable : it->second;
}

int64_t ToyPatternTable::distance(const Assignment& concrete_state) const {
    Assignment abstract;
    abstract.reserve(pattern_.size());
    for (int32_t var : pattern_)
        abstract.push_back(concrete_state[var]);
    return distance_of_abstract(abstract);
}

ToyAdditivePdb::ToyAdditivePdb(const GroundDomain& domain, PatternCollection collection)
    : collection_(std::move(collection)) {
    tables_.reserve(collection_.size());
    for (const Pattern& p : collection_)
        tables_.push_back(std::make_shared<ToyPatternTable>(domain, p));
}

int64_t ToyAdditivePdb::value(const Assignment& state) const {
    int64_t sum = 0;
    for (const auto& table : tables_) {
        sum = saturated_add(sum, table->distance(state));
        if (sum >= kUnreachable)
            return kUnreachable;
    }
    return sum;
}

ToyHeuristicBundle::ToyHeuristicBundle(const GroundDomain& domain, uint64_t seed, int max_k)
    : seed_(seed) {
    const int num_collections = domain.num_variables() + 1;
    heuristics_.reserve(max_k);
    for (int k = 1; k <= max_k; ++k) {
        auto sampled =
            sample_pattern_collections(domain.num_pattern_variables(), k, num_collections,
                                       derive_seed(seed, kStreamCollections, static_cast<uint64_t>(k)));
        std::set<PatternCollection> distinct(sampled.begin(), sampled.end());
        std::vector<ToyAdditivePdb> pdbs;
        pdbs.reserve(distinct.size());
        for (const PatternCollection& c : distinct)
            pdbs.emplace_back(domain, c);
        heuristics_.push_back(std::move(pdbs));
    }
}

int64_t ToyHeuristicBundle::h(int k, const Assignment& state) const {
    if (k < 1 || k > max_k())
        throw InvalidK("h^PDBk out of range: k=" + std::to_string(k));
    int64_t best = 0;
    for (const ToyAdditivePdb& pdb : heuristics_[k - 1])
        best = std::max(best, pdb.value(state));
    return best;
}

int64_t ToyHeuristicBundle::conflicts(int k, const Assignment& state) const {
    if (k < 2 || k > max_k())
        throw InvalidK("conflicts order out of range: k=" + std::to_string(k));
    return conflict_order_value(h(k, state), h(k - 1, state));
}

}  // namespace sokogen
