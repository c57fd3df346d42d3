#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <queue>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sokogen/novelty.hpp"
#include "sokogen/objective.hpp"
#include "sokogen/pdb.hpp"
#include "sokogen/rng.hpp"

namespace sokogen {

struct Budget {
    uint64_t max_expansions = UINT64_MAX;
    double time_limit_s = 0;   // 0 = unlimited
    uint64_t max_states = 0;   // generated-state cap approximating memory; 0 = unlimited
};

struct SearchStats {
    uint64_t expanded = 0;
    uint64_t generated = 0;
    double wall_ms = 0;
};

constexpr int64_t kNotComputed = -1;

// Heuristic/conflict profile of one state: h^PDB1..h^PDB4 and 2C..4C.
struct MetricPanel {
    std::array<int64_t, 4> h{kNotComputed, kNotComputed, kNotComputed, kNotComputed};
    std::array<int64_t, 3> c{kNotComputed, kNotComputed, kNotComputed};

    int64_t h_pdb(int k) const { return h[k - 1]; }
    int64_t conflicts(int k) const { return c[k - 2]; }
};

template <class Bundle, class State>
MetricPanel compute_panel(const Bundle& bundle, const State& state, int panel_k = 4) {
    MetricPanel panel;
    const int top = std::min(panel_k, bundle.max_k());
    for (int k = 1; k <= top; ++k)
        panel.h[k - 1] = bundle.h(k, state);
    for (int k = 2; k <= top; ++k)
        panel.c[k - 2] = conflict_order_value(panel.h[k - 1], panel.h[k - 2]);
    return panel;
}

template <class State>
struct GenerationResult {
    State best{};
    ObjectiveVector selection_values;  // under the selection spec, at generation time
    MetricPanel panel;
    SearchStats stats;
    uint64_t seed = 0;
};

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    double ms() const { return seconds() * 1e3; }

private:
    std::chrono::steady_clock::time_point start_;
};

// Evaluates ordering/selection features for one state, memoizing h values
// across features and driving the novelty table in generation order.
template <class Domain, class Bundle>
class FeatureEvaluator {
public:
    FeatureEvaluator(const Domain& domain, const Bundle& bundle, const OrderingSpec& ordering,
                     const OrderingSpec& selection, int novelty_arity)
        : domain_(domain),
          bundle_(bundle),
          ordering_(ordering),
          selection_(selection),
          novelty_(domain.num_variables(), novelty_arity) {}

    void evaluate(const typename Domain::State& state, ObjectiveVector& order_key,
                  ObjectiveVector& selection_key) {
        h_memo_.assign(static_cast<size_t>(bundle_.max_k()) + 1, kNotComputed);
        state_ = &state;
        order_key.clear();
        for (const FeatureSpec& f : ordering_.features)
            order_key.push_back(feature_value(f));
        selection_key.clear();
        for (const FeatureSpec& f : selection_.features)
            selection_key.push_back(feature_value(f));
    }

    void reset_novelty() { novelty_.reset(); }

private:
    int64_t h_of(int k) {
        if (h_memo_[k] == kNotComputed)
            h_memo_[k] = bundle_.h(k, *state_);
        return h_memo_[k];
    }

    int64_t feature_value(const FeatureSpec& f) {
        switch (f.kind) {
        case FeatureKind::Heuristic:
            return h_of(f.k);
        case FeatureKind::Conflicts:
            return conflict_order_value(h_of(f.k), h_of(f.k - 1));
        case FeatureKind::Novelty: {
            domain_.facts(*state_, facts_);
            return novelty_.evaluate_and_record(facts_, h_of(f.k));
        }
        }
        return 0;
    }

    const Domain& domain_;
    const Bundle& bundle_;
    const OrderingSpec& ordering_;
    const OrderingSpec& selection_;
    NoveltyTable novelty_;
    std::vector<int64_t> h_memo_;
    std::vector<int64_t> facts_;
    const typename Domain::State* state_ = nullptr;
};

template <class State>
struct OpenEntry {
    ObjectiveVector key;
    uint64_t gen_index;
    State state;
};

template <class State>
struct OpenEntryWorse {
    bool operator()(const OpenEntry<State>& a, const OpenEntry<State>& b) const {
        auto cmp = compare(a.key, b.key);
        if (cmp != std::strong_ordering::equal)
            return cmp == std::strong_ordering::less;
        return a.gen_index > b.gen_index;  // FIFO among equal keys
    }
};

}  // namespace detail

// Backward greedy best-first search from all goal states. Expansion order
// follows `ordering` (largest first, generation order breaking ties); the
// returned state maximizes `selection`, which must not contain novelty.
// Every state it can return is reachable from a goal state by pulls and is
// therefore solvable.
template <class Domain, class Bundle>
GenerationResult<typename Domain::State> beta_search(const Domain& domain, const Bundle& bundle,
                                                     const OrderingSpec& ordering,
                                                     const OrderingSpec& selection,
                                                     const Budget& budget, int novelty_arity,
                                                     uint64_t seed) {
    using State = typename Domain::State;
    if (selection.has_novelty())
        throw ParseError("selection objective must not contain novelty");

    detail::Stopwatch watch;
    detail::FeatureEvaluator<Domain, Bundle> evaluator(domain, bundle, ordering, selection,
                                                       novelty_arity);

    GenerationResult<State> result;
    result.seed = seed;

    std::priority_queue<detail::OpenEntry<State>, std::vector<detail::OpenEntry<State>>,
                        detail::OpenEntryWorse<State>>
        open;
    std::unordered_set<State, typename Domain::Hash> closed;

    bool have_best = false;
    ObjectiveVector order_key;
    ObjectiveVector selection_key;
    auto generate = [&](const State& state) {
        const uint64_t gen_index = result.stats.generated++;
        evaluator.evaluate(state, order_key, selection_key);
        if (!have_best || compare(selection_key, result.selection_values) ==
                              std::strong_ordering::greater) {
            result.best = state;
            result.selection_values = selection_key;
            have_best = true;
        }
        closed.insert(state);
        open.push({order_key, gen_index, state});
    };

    std::vector<State> goals = domain.goal_states();
    if (goals.empty())
        throw EmptyGoalSet("domain has no goal states");
    for (const State& g : goals)
        generate(g);

    while (!open.empty()) {
        if (result.stats.expanded >= budget.max_expansions)
            break;
        if (budget.max_states && closed.size() >= budget.max_states)
            break;
        if (budget.time_limit_s > 0 && (result.stats.expanded & 63) == 0 &&
            watch.seconds() >= budget.time_limit_s)
            break;

        State state = open.top().state;
        open.pop();
        ++result.stats.expanded;
        for (const State& pred : domain.predecessors(state)) {
            if (closed.contains(pred))
                continue;
            generate(pred);
        }
    }

    result.panel = compute_panel(bundle, result.best);
    result.stats.wall_ms = watch.ms();
    return result;
}

// Runs beta_search `n_runs` times with run seeds derived from `master_seed`
// and returns the result whose selection objective is largest (earlier run
// wins ties). Expansion/generation counts are summed over all runs. Runs are
// independent, so with jobs > 1 they execute in parallel; the outcome is
// identical to the sequential one.
template <class Domain, class MakeBundle>
auto aggregate_runs(const Domain& domain, MakeBundle&& make_bundle, int n_runs,
                    const OrderingSpec& ordering, const OrderingSpec& selection,
                    const Budget& budget, int novelty_arity, uint64_t master_seed, int jobs = 1)
    -> GenerationResult<typename Domain::State> {
    using Result = GenerationResult<typename Domain::State>;
    if (n_runs < 1)
        throw InvalidK("aggregation needs n_runs >= 1");

    std::vector<Result> results(n_runs);
    auto run_one = [&](int i) {
        const uint64_t run_seed = derive_seed(master_seed, kStreamRun, static_cast<uint64_t>(i));
        auto bundle = make_bundle(run_seed);
        results[i] =
            beta_search(domain, bundle, ordering, selection, budget, novelty_arity, run_seed);
    };

    if (jobs <= 1 || n_runs == 1) {
        for (int i = 0; i < n_runs; ++i)
            run_one(i);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int i = next.fetch_add(1); i < n_runs; i = next.fetch_add(1))
                run_one(i);
        };
        std::vector<std::thread> pool;
        const int width = std::min(jobs, n_runs);
        pool.reserve(width);
        for (int t = 0; t < width; ++t)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }

    Result merged = results[0];
    for (int i = 1; i < n_runs; ++i) {
        merged.stats.expanded += results[i].stats.expanded;
        merged.stats.generated += results[i].stats.generated;
        merged.stats.wall_ms += results[i].stats.wall_ms;
        if (compare(results[i].selection_values, merged.selection_values) ==
            std::strong_ordering::greater) {
            merged.best = results[i].best;
            merged.selection_values = results[i].selection_values;
            merged.panel = results[i].panel;
            merged.seed = results[i].seed;
        }
    }
    return merged;
}

// Baseline: `length` uniformly random pulls from a random goal state.
template <class Domain, class Bundle>
GenerationResult<typename Domain::State> random_walk_baseline(const Domain& domain,
                                                              const Bundle& bundle,
                                                              const OrderingSpec& selection,
                                                              uint64_t length, uint64_t seed) {
    using State = typename Domain::State;
    if (selection.has_novelty())
        throw ParseError("selection objective must not contain novelty");
    detail::Stopwatch watch;
    Rng rng(derive_seed(seed, kStreamWalk, 0));

    std::vector<State> goals = domain.goal_states();
    if (goals.empty())
        throw EmptyGoalSet("domain has no goal states");

    GenerationResult<State> result;
    result.seed = seed;
    State current = goals[rng.below(goals.size())];
    result.stats.generated = 1;
    for (uint64_t step = 0; step < length; ++step) {
        std::vector<State> preds = domain.predecessors(current);
        if (preds.empty())
            break;
        ++result.stats.expanded;
        result.stats.generated += preds.size();
        current = preds[rng.below(preds.size())];
    }

    result.best = std::move(current);
    detail::FeatureEvaluator<Domain, Bundle> evaluator(domain, bundle, selection, selection, 1);
    ObjectiveVector unused;
    evaluator.evaluate(result.best, unused, result.selection_values);
    result.panel = compute_panel(bundle, result.best);
    result.stats.wall_ms = watch.ms();
    return result;
}

// Baseline: plain backward breadth-first search; returns the first state
// generated at the deepest completed level.
template <class Domain, class Bundle>
GenerationResult<typename Domain::State> backward_bfs_baseline(const Domain& domain,
                                                               const Bundle& bundle,
                                                               const OrderingSpec& selection,
                                                               const Budget& budget,
                                                               uint64_t seed) {
    using State = typename Domain::State;
    if (selection.has_novelty())
        throw ParseError("selection objective must not contain novelty");
    detail::Stopwatch watch;

    std::vector<State> goals = domain.goal_states();
    if (goals.empty())
        throw EmptyGoalSet("domain has no goal states");

    GenerationResult<State> result;
    result.seed = seed;

    std::unordered_set<State, typename Domain::Hash> closed;
    std::deque<std::pair<State, uint64_t>> queue;
    uint64_t best_depth = 0;
    result.best = goals.front();
    for (const State& g : goals) {
        if (closed.insert(g).second) {
            queue.emplace_back(g, 0);
            ++result.stats.generated;
        }
    }
    while (!queue.empty()) {
        if (result.stats.expanded >= budget.max_expansions)
            break;
        if (budget.max_states && closed.size() >= budget.max_states)
            break;
        if (budget.time_limit_s > 0 && (result.stats.expanded & 63) == 0 &&
            watch.seconds() >= budget.time_limit_s)
            break;
        auto [state, depth] = std::move(queue.front());
        queue.pop_front();
        ++result.stats.expanded;
        for (const State& pred : domain.predecessors(state)) {
            if (!closed.insert(pred).second)
                continue;
            ++result.stats.generated;
            if (depth + 1 > best_depth) {
                best_depth = depth + 1;
                result.best = pred;
            }
            queue.emplace_back(pred, depth + 1);
        }
    }

    detail::FeatureEvaluator<Domain, Bundle> evaluator(domain, bundle, selection, selection, 1);
    ObjectiveVector unused;
    evaluator.evaluate(result.best, unused, result.selection_values);
    result.panel = compute_panel(bundle, result.best);
    result.stats.wall_ms = watch.ms();
    return result;
}

}  // namespace sokogen
