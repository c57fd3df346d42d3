#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sokogen {

// Novelty w(s) = |V| - n + 1, where n is the size of the smallest fact subset
// of s never seen before among states generated with the same heuristic
// value. Tuples are tracked up to arity `max_arity`; when nothing of arity
// <= max_arity is new the state gets kNoveltyMin, which sits below every
// achievable |V| - max_arity + 1.
//
// The table belongs to one search episode and must see every generated state
// exactly once, in generation order.
class NoveltyTable {
public:
    static constexpr int kNoveltyMin = 0;

    NoveltyTable(int num_variables, int max_arity);

    // Returns w for `facts` (one fact per variable, sorted) under heuristic
    // value `h_value`, then records all tuples of the state.
    int evaluate_and_record(std::span<const int64_t> facts, int64_t h_value);

    void reset();

    int num_variables() const { return num_variables_; }
    int max_arity() const { return max_arity_; }

private:
    struct TupleHash {
        size_t operator()(const std::vector<int64_t>& t) const {
            uint64_t h = 0xcbf29ce484222325ull;
            for (int64_t f : t) {
                h ^= static_cast<uint64_t>(f);
                h *= 0x100000001b3ull;
            }
            return static_cast<size_t>(h);
        }
    };
    using TupleSet = std::unordered_set<std::vector<int64_t>, TupleHash>;

    int num_variables_;
    int max_arity_;
    std::unordered_map<int64_t, std::vector<TupleSet>> seen_;  // by h value, then arity-1
};

}  // namespace sokogen
