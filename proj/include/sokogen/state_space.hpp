#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sokogen/errors.hpp"

namespace sokogen {

// A complete assignment over finite-domain variables. Values are compared and
// hashed by content only.
using Assignment = std::vector<int32_t>;

struct AssignmentHash {
    size_t operator()(const Assignment& a) const {
        uint64_t h = 0xcbf29ce484222325ull;
        for (int32_t v : a) {
            h ^= static_cast<uint64_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 0x100000001b3ull;
        }
        return static_cast<size_t>(h);
    }
};

// Partial assignment, kept sorted by variable index.
struct PartialAssignment {
    std::vector<std::pair<int32_t, int32_t>> entries;  // (variable, value)

    void set(int32_t var, int32_t value);
    bool holds_in(const Assignment& state) const;
    bool binds(int32_t var) const;
    bool operator==(const PartialAssignment&) const = default;
};

struct ActionDef {
    PartialAssignment pre;
    PartialAssignment post;
    int32_t cost = 1;
    std::string name;
};

bool applicable(const Assignment& state, const ActionDef& action);

// Applies `action` to `state`; throws NotApplicable when a precondition fails.
Assignment apply_action(const Assignment& state, const ActionDef& action);

// Inverse action: requires the precondition to bind every effect variable, so
// regression is deterministic. All shipped domains satisfy this.
ActionDef inverse(const ActionDef& action);

// Explicitly grounded finite-domain state space. Small by construction; used
// for the toy fixture domain and for PDB projections of it.
class GroundDomain {
public:
    using State = Assignment;
    using Hash = AssignmentHash;

    GroundDomain(std::vector<int32_t> domain_sizes, std::vector<ActionDef> actions,
                 std::vector<Assignment> goals);

    int num_variables() const { return static_cast<int>(domain_sizes_.size()); }
    int num_pattern_variables() const { return num_variables(); }
    const std::vector<int32_t>& domain_sizes() const { return domain_sizes_; }
    const std::vector<ActionDef>& actions() const { return actions_; }

    bool is_goal(const Assignment& state) const;
    std::vector<Assignment> goal_states() const { return goals_; }

    std::vector<Assignment> successors(const Assignment& state) const;
    std::vector<Assignment> predecessors(const Assignment& state) const;

    // Novelty facts: one (variable, value) pair per variable.
    void facts(const Assignment& state, std::vector<int64_t>& out) const;

    // Syntactic projection onto a variable subset (sorted indices). Variables
    // are renumbered 0..|pattern|-1; actions whose projected effect is empty
    // are dropped.
    GroundDomain project(std::span<const int32_t> pattern) const;

private:
    std::vector<int32_t> domain_sizes_;
    std::vector<ActionDef> actions_;
    std::vector<ActionDef> inverses_;
    std::vector<Assignment> goals_;
};

// The three-variable example domain used throughout the tests: domains
// {0..4}, inc actions raising a variable by one (up to 3), and jump actions
// 0 -> 3 guarded by all other variables being 4.
GroundDomain toy_pe_problem();

}  // namespace sokogen
