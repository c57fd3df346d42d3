#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "sokogen/sokoban.hpp"
#include "sokogen/state_space.hpp"

namespace sokogen {

// Distance of abstract states with no push path to an abstract goal.
// Absorbing under saturated addition and max.
constexpr int64_t kUnreachable = std::numeric_limits<int32_t>::max();

inline int64_t saturated_add(int64_t a, int64_t b) {
    return (a >= kUnreachable || b >= kUnreachable) ? kUnreachable : a + b;
}

// Conflicts of order k: the clamped difference between the order-k and the
// order-(k-1) heuristic estimates. Unreachable estimates carry no conflict
// signal and yield 0.
inline int64_t conflict_order_value(int64_t h_k, int64_t h_k_minus_1) {
    if (h_k >= kUnreachable || h_k_minus_1 >= kUnreachable)
        return 0;
    return h_k > h_k_minus_1 ? h_k - h_k_minus_1 : 0;
}

// A pattern is a sorted subset of the partitioned variables (box slots for
// Sokoban; the man is implicitly part of every Sokoban pattern).
using Pattern = std::vector<int32_t>;
using PatternCollection = std::vector<Pattern>;

// Uniform random partitions of 0..num_vars-1 into blocks of `pattern_size`
// (the final block holds the remainder). Deterministic for a given seed.
// Throws InvalidK for pattern_size < 1.
std::vector<PatternCollection> sample_pattern_collections(int num_vars, int pattern_size,
                                                          int count, uint64_t seed);

constexpr size_t kDefaultEagerCap = 50'000'000;
constexpr int kMaxPatternBoxes = 8;

// ---------------------------------------------------------------------------
// Sokoban pattern databases.
//
// The abstract state of a pattern is the multiset of its boxes' cells plus
// the man's canonical region computed with all other boxes removed. Since
// boxes are indistinguishable, the distance table only depends on the number
// of boxes in the pattern, so one table per size serves every collection.
// ---------------------------------------------------------------------------

struct BoxPatternState {
    std::array<uint16_t, kMaxPatternBoxes> cells{};  // sorted, first `n` used
    uint8_t n = 0;
    uint16_t man = 0;

    bool operator==(const BoxPatternState&) const = default;
};

struct BoxPatternStateHash {
    size_t operator()(const BoxPatternState& s) const {
        uint64_t h = 0xcbf29ce484222325ull ^ s.n;
        for (int i = 0; i < s.n; ++i) {
            h ^= s.cells[i];
            h *= 0x100000001b3ull;
        }
        h ^= static_cast<uint64_t>(s.man) << 1;
        h *= 0x100000001b3ull;
        return static_cast<size_t>(h);
    }
};

// Exact minimal push counts from every abstract state to the nearest abstract
// goal (any n-subset of the goal cells), built by backward pull BFS. When the
// table would exceed `eager_cap` entries the build aborts and queries fall
// back to a memoized forward search per state ("lazy mode"); with lazy mode
// disabled the overflow throws BudgetExceeded instead.
class BoxPatternTable {
public:
    BoxPatternTable(const Maze& maze, int num_boxes, size_t eager_cap = kDefaultEagerCap,
                    bool allow_lazy = true);

    int num_boxes() const { return num_boxes_; }
    bool lazy() const { return lazy_; }
    size_t size() const { return dist_.size(); }

    int64_t distance(const BoxPatternState& s) const;

    // Sorted snapshot of the eager table, for serialization.
    std::vector<std::pair<BoxPatternState, int32_t>> sorted_entries() const;

    // Rebuilds a table from cached entries; must match a fresh eager build.
    BoxPatternTable(const Maze& maze, int num_boxes,
                    std::vector<std::pair<BoxPatternState, int32_t>> entries);

private:
    int64_t lazy_distance(const BoxPatternState& s) const;

    const Maze* maze_;
    int num_boxes_;
    bool lazy_ = false;
    std::unordered_map<BoxPatternState, int32_t, BoxPatternStateHash> dist_;
    mutable std::mutex memo_mutex_;
    mutable std::unordered_map<BoxPatternState, int32_t, BoxPatternStateHash> memo_;
};

// Shares the size-keyed tables of one maze.
class BoxTableStore {
public:
    explicit BoxTableStore(const Maze& maze, size_t eager_cap = kDefaultEagerCap)
        : maze_(&maze), eager_cap_(eager_cap) {}

    std::shared_ptr<const BoxPatternTable> table(int num_boxes) const;
    void adopt(int num_boxes, std::shared_ptr<const BoxPatternTable> table) const;
    std::vector<std::pair<int, std::shared_ptr<const BoxPatternTable>>> snapshot() const;
    const Maze& maze() const { return *maze_; }

private:
    const Maze* maze_;
    size_t eager_cap_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<int, std::shared_ptr<const BoxPatternTable>> tables_;
};

// Projects a concrete state onto a pattern of box slots.
BoxPatternState project_state(const Maze& maze, const SokobanState& state,
                              std::span<const int32_t> pattern);

// Sum of per-pattern abstract distances for one collection.
class SokobanAdditivePdb {
public:
    SokobanAdditivePdb(std::shared_ptr<const BoxTableStore> store, PatternCollection collection);

    int64_t value(const SokobanState& state) const;
    const PatternCollection& collection() const { return collection_; }

private:
    std::shared_ptr<const BoxTableStore> store_;
    PatternCollection collection_;
    std::vector<std::shared_ptr<const BoxPatternTable>> tables_;
};

SokobanAdditivePdb build_additive_pdb(std::shared_ptr<const BoxTableStore> store,
                                      PatternCollection collection);

// h^PDBk: maximum over |V|+1 sampled additive collections of pattern size k.
// Duplicate collections are evaluated once.
class SokobanMaxPdb {
public:
    SokobanMaxPdb(std::shared_ptr<const BoxTableStore> store, int pattern_size, int num_collections,
                  uint64_t seed);

    int64_t value(const SokobanState& state) const;
    int pattern_size() const { return pattern_size_; }
    const std::vector<SokobanAdditivePdb>& additive_pdbs() const { return pdbs_; }

private:
    int pattern_size_;
    std::vector<SokobanAdditivePdb> pdbs_;
};

// The per-run heuristic family h^PDB1..h^PDBmax_k over one maze, all sampled
// from one seed and sharing the size-keyed tables.
class SokobanHeuristicBundle {
public:
    SokobanHeuristicBundle(const Maze& maze, uint64_t seed, int max_k = 4,
                           size_t eager_cap = kDefaultEagerCap);

    // Builds on a pre-populated store (e.g. loaded from the disk cache). The
    // maze referenced by the store must outlive the bundle.
    SokobanHeuristicBundle(std::shared_ptr<const BoxTableStore> store, uint64_t seed,
                           int max_k = 4);

    int64_t h(int k, const SokobanState& state) const;
    int64_t conflicts(int k, const SokobanState& state) const;  // k >= 2
    int max_k() const { return static_cast<int>(heuristics_.size()); }
    uint64_t seed() const { return seed_; }
    const std::shared_ptr<const BoxTableStore>& store() const { return store_; }

private:
    uint64_t seed_;
    std::shared_ptr<const BoxTableStore> store_;
    std::vector<SokobanMaxPdb> heuristics_;  // index k-1
};

// ---------------------------------------------------------------------------
// Ground-domain (toy) pattern databases. Projection is syntactic, so tables
// are keyed by the pattern itself.
// ---------------------------------------------------------------------------

class ToyPatternTable {
public:
    ToyPatternTable(const GroundDomain& domain, Pattern pattern);

    int64_t distance_of_abstract(const Assignment& abstract_state) const;
    int64_t distance(const Assignment& concrete_state) const;
    const Pattern& pattern() const { return pattern_; }

private:
    Pattern pattern_;
    std::unordered_map<Assignment, int32_t, AssignmentHash> dist_;
};

class ToyAdditivePdb {
public:
    ToyAdditivePdb(const GroundDomain& domain, PatternCollection collection);

    int64_t value(const Assignment& state) const;
    const PatternCollection& collection() const { return collection_; }

private:
    PatternCollection collection_;
    std::vector<std::shared_ptr<const ToyPatternTable>> tables_;
};

class ToyHeuristicBundle {
public:
    ToyHeuristicBundle(const GroundDomain& domain, uint64_t seed, int max_k = 4);

    int64_t h(int k, const Assignment& state) const;
    int64_t conflicts(int k, const Assignment& state) const;
    int max_k() const { return static_cast<int>(heuristics_.size()); }
    uint64_t seed() const { return seed_; }

private:
    uint64_t seed_;
    std::vector<std::vector<ToyAdditivePdb>> heuristics_;  // index k-1 -> distinct collections
};

}  // namespace sokogen
