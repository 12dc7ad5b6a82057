#pragma once

#include "rum/budget.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rum {

// One patch chosen per budget; equivalently a binary vector in {0,1}^I with
// exactly one 1 per budget block.
struct BehavioralType {
    std::vector<std::size_t> choice;  // canonical patch index per budget

    bool operator==(const BehavioralType&) const = default;

    std::vector<int> flat(const PatchLayout& layout) const;
    static BehavioralType from_flat(const PatchLayout& layout,
                                    const std::vector<int>& bits);
};

// True iff the patch chosen on budget j_to lies strictly inside budget
// j_from, i.e. the choice on j_from is directly revealed preferred.
bool revealed_prefers(const PatchLayout& layout, const BehavioralType& a,
                      std::size_t j_from, std::size_t j_to);

struct SarpVerdict {
    bool consistent = true;
    std::vector<std::size_t> cycle;  // budgets of one cycle when inconsistent
};

// Checks the direct revealed preference graph for cycles (DFS, deterministic
// first cycle).
SarpVerdict satisfies_sarp(const PatchLayout& layout, const BehavioralType& a);

struct TypeEnumeration {
    std::vector<BehavioralType> all;       // the full product, lexicographic
    std::vector<BehavioralType> rational;  // SARP-consistent subset
    std::vector<bool> is_rational;         // aligned with `all`
};

inline constexpr std::uint64_t kDefaultTypeCap = std::uint64_t{1} << 20;

// Throws std::length_error naming the product when it exceeds the cap.
TypeEnumeration enumerate_types(const PatchLayout& layout,
                                std::uint64_t cap = kDefaultTypeCap);

}  // namespace rum
