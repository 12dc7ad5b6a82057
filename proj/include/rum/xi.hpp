#pragma once

#include "rum/budget.hpp"

#include <vector>

namespace rum {

// A subfamily of budget indices, sorted ascending, |J| >= 2. The extended
// index (the constant-1/J row) is represented separately where needed.
using Subfamily = std::vector<std::size_t>;

// All subfamilies of {0..J-1} with at least two members, ordered by
// ascending cardinality, then lexicographically.
std::vector<Subfamily> all_subfamilies(std::size_t J);

// A patch is undominated in J iff its budget belongs to J and the patch lies
// strictly outside every other budget of J.
bool is_undominated(const Patch& patch, const Subfamily& sub);

// Indicator vector of undominatedness over the flat coordinates.
std::vector<int> xi_vector(const PatchLayout& layout, const Subfamily& sub);

struct XiMatrix {
    std::vector<Subfamily> subfamilies;    // row order as in all_subfamilies
    std::vector<std::vector<int>> rows;    // {0,1}^I, aligned with subfamilies
    RationalVector extended_row;           // (1/J, ..., 1/J)
    std::size_t cols = 0;

    Rational row_dot(std::size_t r, const RationalVector& v) const;
    Rational extended_dot(const RationalVector& v) const;
};

XiMatrix build_xi(const PatchLayout& layout);

// The proof-of-the-characterization construction: budgets sorted strictly
// along a direction d, the patch of each budget containing d/(p.d), and the
// partition of subfamilies by their earliest budget in that order.
struct ChainPartition {
    RationalVector direction;
    std::vector<std::size_t> order;        // budgets sorted ascending by p.d
    std::vector<std::size_t> chain_patch;  // canonical patch index per position
    // groups[k] = row indices of subfamilies whose earliest budget (in
    // `order`) is order[k]; k ranges over 0..J-2.
    std::vector<std::vector<std::size_t>> groups;
};

// Never fails for valid families: tries coordinate directions, the all-ones
// vector, then seeded pseudo-random nonnegative directions until the dot
// products are pairwise distinct. Invariants are verified before returning.
ChainPartition chain_partition(const BudgetFamily& family,
                               const PatchLayout& layout, const XiMatrix& xi);

struct TumVerdict {
    bool tum = true;
    bool exhaustive = true;
    std::size_t max_order_checked = 0;
    // violating submatrix, when found
    std::vector<std::size_t> bad_rows, bad_cols;
    Integer bad_det = 0;
};

// Examines square submatrices of the ordinary (0/1) rows up to max_order.
// Exhaustive while the count per order stays tractable; switches to seeded
// sampling beyond that and reports exhaustive=false.
TumVerdict check_total_unimodularity(const XiMatrix& xi, std::size_t max_order,
                                     std::uint64_t seed = 0);

}  // namespace rum
