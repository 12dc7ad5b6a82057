#pragma once

#include "rum/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace rum {

// J budgets in n goods, each budget j being {y >= 0 : p_j . y = 1}.
// Prices are strictly positive and pairwise distinct.
struct BudgetFamily {
    std::size_t n = 0;
    std::vector<RationalVector> prices;

    std::size_t num_budgets() const { return prices.size(); }

    // Throws std::invalid_argument on nonpositive prices, duplicate price
    // vectors, n < 2 or J < 2.
    void validate() const;
};

enum class Sign { Below, Above };

// A cell of budget hyperplane j, identified by its strict position against
// every other budget.
struct Patch {
    std::size_t budget = 0;          // j
    std::vector<Sign> signs;         // indexed by j' over 0..J-1, entry j unused
    std::size_t canonical_index = 0; // i within budget j
    RationalVector witness;          // point with p_j.y = 1 and strict slacks
};

struct PatchLayout {
    std::vector<std::vector<Patch>> patches;  // per budget, canonical order
    std::vector<std::size_t> block_offset;    // flat coordinate of (j, 0)
    std::size_t total = 0;                    // I

    std::size_t count(std::size_t j) const { return patches[j].size(); }
    std::size_t flat(std::size_t j, std::size_t i) const {
        return block_offset[j] + i;
    }
    const Patch& patch(std::size_t j, std::size_t i) const {
        return patches[j][i];
    }
};

struct FeasibilityResult {
    bool feasible = false;
    RationalVector witness;  // present when feasible
};

// Decides nonemptiness of the sign cell on budget j via exact slack
// maximization; signs[j] is ignored. Feasible iff the optimal slack is
// strictly positive.
FeasibilityResult patch_feasibility(const BudgetFamily& family, std::size_t j,
                                    const std::vector<Sign>& signs);

// Enumerates the nonempty sign cells of every budget. Canonical order within
// a budget: encode ABOVE=1/BELOW=0 over j' != j (ascending j', first j' most
// significant) and sort ascending by the resulting integer.
PatchLayout enumerate_patches(const BudgetFamily& family);

}  // namespace rum
