#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sokogen/errors.hpp"

namespace sokogen {

enum class FeatureKind : uint8_t { Novelty, Conflicts, Heuristic };

struct FeatureSpec {
    FeatureKind kind;
    int k;
    bool operator==(const FeatureSpec&) const = default;
};

// Lexicographic feature list, e.g. "w(pdb4),4C,pdb4". Novelty may appear at
// most once and only in front; conflicts require order >= 2.
struct OrderingSpec {
    std::vector<FeatureSpec> features;

    static OrderingSpec parse(const std::string& text);
    std::string to_string() const;

    bool has_novelty() const;
    // Largest PDB order any feature touches (conflicts of order k need k-1 too).
    int max_pdb_order() const;
    // The spec with novelty features removed; used for state selection.
    OrderingSpec without_novelty() const;

    bool operator==(const OrderingSpec&) const = default;
};

// Feature values of one state, compared lexicographically; larger is better.
using ObjectiveVector = std::vector<int64_t>;

// Throws ArityMismatch when the vectors disagree in length.
std::strong_ordering compare(std::span<const int64_t> a, std::span<const int64_t> b);

}  // namespace sokogen
