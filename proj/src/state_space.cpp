#include "sokogen/state_space.hpp"

#include <algorithm>
#include <unordered_set>

namespace sokogen {

void PartialAssignment::set(int32_t var, int32_t value) {
    auto it = std::lower_bound(entries.begin(), entries.end(), var,
                               [](const auto& e, int32_t v) { return e.first < v; });
    if (it != entries.end() && it->first == var)
        it->second = value;
    else
        entries.insert(it, {var, value});
}

bool PartialAssignment::holds_in(const Assignment& state) const {
    for (const auto& [var, value] : entries)
        if (state[var] != value)
            return false;
    return true;
}

bool PartialAssignment::binds(int32_t var) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), var,
                               [](const auto& e, int32_t v) { return e.first < v; });
    return it != entries.end() && it->first == var;
}

bool applicable(const Assignment& state, const ActionDef& action) {
    return action.pre.holds_in(state);
}

Assignment apply_action(const Assignment& state, const ActionDef& action) {
    if (!applicable(state, action))
        throw NotApplicable("action " + action.name + " is not applicable");
    Assignment result = state;
    for (const auto& [var, value] : action.post.entries)
        result[var] = value;
    return result;
}

ActionDef inverse(const ActionDef& action) {
    ActionDef inv;
    inv.cost = action.cost;
    inv.name = action.name + "^-1";
    // Precondition: effects hold, plus the pure-precondition frame.
    inv.pre = action.post;
    for (const auto& [var, value] : action.pre.entries)
        if (!action.post.binds(var))
            inv.pre.set(var, value);
    // Effect: restore the original values of the effect variables.
    for (const auto& [var, value] : action.post.entries) {
        bool found = false;
        for (const auto& [pvar, pvalue] : action.pre.entries) {
            if (pvar == var) {
                inv.post.set(var, pvalue);
                found = true;
                break;
            }
        }
        if (!found)
            throw NotApplicable("action " + action.name +
                                " has an effect variable unbound in its precondition; no inverse");
    }
    return inv;
}

GroundDomain::GroundDomain(std::vector<int32_t> domain_sizes, std::vector<ActionDef> actions,
                           std::vector<Assignment> goals)
    : domain_sizes_(std::move(domain_sizes)), actions_(std::move(actions)), goals_(std::move(goals)) {
    inverses_.reserve(actions_.size());
    for (const ActionDef& a : actions_)
        inverses_.push_back(inverse(a));
}

bool GroundDomain::is_goal(const Assignment& state) const {
    return std::find(goals_.begin(), goals_.end(), state) != goals_.end();
}

namespace {

std::vector<Assignment> expand_with(const Assignment& state, const std::vector<ActionDef>& actions) {
    std::vector<Assignment> result;
    std::unordered_set<Assignment, AssignmentHash> seen;
    for (const ActionDef& a : actions) {
        if (!applicable(state, a))
            continue;
        Assignment next = apply_action(state, a);
        if (seen.insert(next).second)
            result.push_back(std::move(next));
    }
    return result;
}

}  // namespace

std::vector<Assignment> GroundDomain::successors(const Assignment& state) const {
    return expand_with(state, actions_);
}

std::vector<Assignment> GroundDomain::predecessors(const Assignment& state) const {
    return expand_with(state, inverses_);
}

void GroundDomain::facts(const Assignment& state, std::vector<int64_t>& out) const {
    out.clear();
    for (size_t var = 0; var < state.size(); ++var)
        out.push_back((static_cast<int64_t>(var) << 32) | static_cast<uint32_t>(state[var]));
}

GroundDomain GroundDomain::project(std::span<const int32_t> pattern) const {
    std::vector<int32_t> remap(domain_sizes_.size(), -1);
    std::vector<int32_t> sizes;
    for (size_t i = 0; i < pattern.size(); ++i) {
        remap[pattern[i]] = static_cast<int32_t>(i);
        sizes.push_back(domain_sizes_[pattern[i]]);
    }

    auto project_partial = [&](const PartialAssignment& p) {
        PartialAssignment out;
        for (const auto& [var, value] : p.entries)
            if (remap[var] >= 0)
                out.set(remap[var], value);
        return out;
    };

    std::vector<ActionDef> actions;
    for (const ActionDef& a : actions_) {
        ActionDef p;
        p.pre = project_partial(a.pre);
        p.post = project_partial(a.post);
        if (p.post.entries.empty())
            continue;  // does not affect the pattern
        p.cost = a.cost;
        p.name = a.name;
        actions.push_back(std::move(p));
    }

    std::vector<Assignment> goals;
    std::unordered_set<Assignment, AssignmentHash> seen;
    for (const Assignment& g : goals_) {
        Assignment pg;
        pg.reserve(pattern.size());
        for (int32_t var : pattern)
            pg.push_back(g[var]);
        if (seen.insert(pg).second)
            goals.push_back(std::move(pg));
    }

    return GroundDomain(std::move(sizes), std::move(actions), std::move(goals));
}

GroundDomain toy_pe_problem() {
    const int kNumVars = 3;
    const int32_t kDomain = 5;

    std::vector<ActionDef> actions;
    for (int32_t var = 0; var < kNumVars; ++var) {
        for (int32_t x = 0; x <= 2; ++x) {
            ActionDef inc;
            inc.pre.set(var, x);
            inc.post.set(var, x + 1);
            inc.name = "inc_v" + std::to_string(var + 1) + "_" + std::to_string(x);
            actions.push_back(std::move(inc));
        }
        ActionDef jump;
        for (int32_t other = 0; other < kNumVars; ++other)
            if (other != var)
                jump.pre.set(other, 4);
        jump.pre.set(var, 0);
        jump.post.set(var, 3);
        jump.name = "jump_v" + std::to_string(var + 1);
        actions.push_back(std::move(jump));
    }

    return GroundDomain(std::vector<int32_t>(kNumVars, kDomain), std::move(actions),
                        {Assignment{3, 3, 3}});
}

}  // namespace sokogen
