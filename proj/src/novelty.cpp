#include "sokogen/novelty.hpp"

#include <algorithm>

namespace sokogen {

NoveltyTable::NoveltyTable(int num_variables, int max_arity)
    : num_variables_(num_variables), max_arity_(std::clamp(max_arity, 1, std::max(1, num_variables))) {}

void NoveltyTable::reset() {
    seen_.clear();
}

namespace {

// Visits all size-n index combinations of [0, count) in lexicographic order.
template <typename Fn>
void for_each_combination(int count, int n, Fn&& fn) {
    std::vector<int> pick(n);
    for (int i = 0; i < n; ++i)
        pick[i] = i;
    if (n > count)
        return;
    for (;;) {
        if (!fn(pick))
            return;
        int i = n - 1;
        while (i >= 0 && pick[i] == count - n + i)
            --i;
        if (i < 0)
            return;
        ++pick[i];
        for (int j = i + 1; j < n; ++j)
            pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace

int NoveltyTable::evaluate_and_record(std::span<const int64_t> facts, int64_t h_value) {
    const int count = static_cast<int>(facts.size());
    const int arity = std::min(max_arity_, count);

    std::vector<TupleSet>& by_arity = seen_[h_value];
    if (by_arity.empty())
        by_arity.resize(arity);

    // Smallest arity with an unseen tuple, before recording anything.
    int novelty = kNoveltyMin;
    std::vector<int64_t> tuple;
    for (int n = 1; n <= arity && novelty == kNoveltyMin; ++n) {
        const TupleSet& set = by_arity[n - 1];
        for_each_combination(count, n, [&](const std::vector<int>& pick) {
            tuple.clear();
            for (int idx : pick)
                tuple.push_back(facts[idx]);
            if (!set.contains(tuple))
                novelty = num_variables_ - n + 1;
            return novelty == kNoveltyMin;
        });
    }

    for (int n = 1; n <= arity; ++n) {
        TupleSet& set = by_arity[n - 1];
        for_each_combination(count, n, [&](const std::vector<int>& pick) {
            tuple.clear();
            for (int idx : pick)
                tuple.push_back(facts[idx]);
            set.insert(tuple);
            return true;
        });
    }
    return novelty;
}

}  // namespace sokogen
