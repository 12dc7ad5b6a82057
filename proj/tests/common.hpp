#pragma once

#include "rum/analysis.hpp"

#include <random>

namespace rumtest {

using namespace rum;

// Two-good three-budget family matching the geometry used throughout the
// worked examples (three pairwise-crossing lines).
inline BudgetFamily crossing_lines_family() {
    BudgetFamily f;
    f.n = 2;
    f.prices = {{4, 1}, {2, 2}, {1, 4}};
    return f;
}

// Symmetric three-good three-budget family; four patches per budget.
inline BudgetFamily symmetric3_family() {
    BudgetFamily f;
    f.n = 3;
    f.prices = {{Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                {Rational(1, 4), Rational(1, 2), Rational(1, 4)},
                {Rational(1, 4), Rational(1, 4), Rational(1, 2)}};
    return f;
}

// Display maps onto the published patch numbering: map[j][d] is the
// canonical index shown at display position d.
inline std::vector<std::vector<std::size_t>> crossing_lines_map() {
    return {{2, 1, 0}, {0, 2, 1}, {0, 1, 2}};
}
inline std::vector<std::vector<std::size_t>> symmetric3_map() {
    return {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 1, 2, 3}};
}

// A flat vector given in display order -> canonical flat coordinates.
template <typename T>
std::vector<T> to_canonical(const PatchLayout& layout,
                            const std::vector<std::vector<std::size_t>>& map,
                            const std::vector<T>& display) {
    std::vector<T> out(layout.total);
    for (std::size_t j = 0; j < layout.patches.size(); ++j)
        for (std::size_t d = 0; d < layout.count(j); ++d)
            out[layout.flat(j, map[j][d])] = display[layout.flat(j, d)];
    return out;
}

inline StochasticDemand demand_from_display(
    const PatchLayout& layout, const std::vector<std::vector<std::size_t>>& map,
    const std::vector<Rational>& display) {
    return StochasticDemand{to_canonical(layout, map, display)};
}

inline BehavioralType type_from_display(
    const PatchLayout& layout, const std::vector<std::vector<std::size_t>>& map,
    const std::vector<int>& display) {
    return BehavioralType::from_flat(layout, to_canonical(layout, map, display));
}

// Seeded random demand: integer weights normalized per budget block.
inline StochasticDemand random_demand(const PatchLayout& layout,
                                      std::mt19937_64& rng) {
    std::uniform_int_distribution<int> w(0, 9);
    RationalVector pi(layout.total, 0);
    for (std::size_t j = 0; j < layout.patches.size(); ++j) {
        Rational sum = 0;
        do {
            sum = 0;
            for (std::size_t i = 0; i < layout.count(j); ++i) {
                pi[layout.flat(j, i)] = w(rng);
                sum += pi[layout.flat(j, i)];
            }
        } while (sum == 0);
        for (std::size_t i = 0; i < layout.count(j); ++i)
            pi[layout.flat(j, i)] /= sum;
    }
    return StochasticDemand{pi};
}

inline Rational rat(const std::string& s) { return *parse_rational(s); }

// Independent determinant oracle: cofactor expansion over exact integers.
inline Integer cofactor_det(const std::vector<std::vector<Integer>>& m) {
    const std::size_t k = m.size();
    if (k == 0) return 1;
    if (k == 1) return m[0][0];
    Integer sum = 0;
    int sign = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<std::vector<Integer>> minor;
        for (std::size_t i = 1; i < k; ++i) {
            std::vector<Integer> row;
            for (std::size_t j = 0; j < k; ++j)
                if (j != c) row.push_back(m[i][j]);
            minor.push_back(std::move(row));
        }
        sum += sign * m[0][c] * cofactor_det(minor);
        sign = -sign;
    }
    return sum;
}

// The witness submatrix named by a failed unimodularity probe.
inline std::vector<std::vector<Integer>> witness_submatrix(const XiMatrix& xi,
                                                           const TumVerdict& v) {
    std::vector<std::vector<Integer>> sub;
    for (auto r : v.bad_rows) {
        std::vector<Integer> row;
        for (auto c : v.bad_cols) row.push_back(xi.rows[r][c]);
        sub.push_back(std::move(row));
    }
    return sub;
}

}  // namespace rumtest
