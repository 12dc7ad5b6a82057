#include "rum/budget.hpp"

#include "rum/lp.hpp"

#include <stdexcept>

namespace rum {

void BudgetFamily::validate() const {
    if (n < 2) throw std::invalid_argument("need at least 2 goods");
    if (prices.size() < 2) throw std::invalid_argument("need at least 2 budgets");
    for (const auto& p : prices) {
        if (p.size() != n)
            throw std::invalid_argument("price vector has wrong dimension");
        for (const auto& x : p)
            if (x <= 0) throw std::invalid_argument("price must be strictly positive");
    }
    for (std::size_t a = 0; a < prices.size(); ++a)
        for (std::size_t b = a + 1; b < prices.size(); ++b)
            if (prices[a] == prices[b])
                throw std::invalid_argument("duplicate price vectors");
}

FeasibilityResult patch_feasibility(const BudgetFamily& family, std::size_t j,
                                    const std::vector<Sign>& signs) {
    const std::size_t n = family.n;
    const std::size_t J = family.num_budgets();
    if (signs.size() != J) throw std::invalid_argument("sign vector has wrong length");

    // Variables (y_1..y_n, t): maximize t subject to
    //   p_j . y = 1,  s_{j'} (p_{j'} . y - 1) >= t  for j' != j,  t <= 1.
    LinearProgram lp;
    lp.objective.assign(n + 1, 0);
    lp.objective[n] = 1;
    lp.lower_bounds.assign(n + 1, Rational(0));
    lp.lower_bounds[n] = std::nullopt;  // t is free

    Constraint on_budget;
    on_budget.coeffs.assign(n + 1, 0);
    for (std::size_t g = 0; g < n; ++g) on_budget.coeffs[g] = family.prices[j][g];
    on_budget.rel = Relation::Equal;
    on_budget.rhs = 1;
    lp.constraints.push_back(on_budget);

    for (std::size_t jp = 0; jp < J; ++jp) {
        if (jp == j) continue;
        Rational s = signs[jp] == Sign::Above ? 1 : -1;
        Constraint c;
        c.coeffs.assign(n + 1, 0);
        for (std::size_t g = 0; g < n; ++g) c.coeffs[g] = s * family.prices[jp][g];
        c.coeffs[n] = -1;
        c.rel = Relation::GreaterEq;
        c.rhs = s;
        lp.constraints.push_back(c);
    }
    Constraint cap;
    cap.coeffs.assign(n + 1, 0);
    cap.coeffs[n] = 1;
    cap.rel = Relation::LessEq;
    cap.rhs = 1;
    lp.constraints.push_back(cap);

    LpOutcome out = solve_lp(lp);
    if (out.status != LpStatus::Optimal || out.value <= 0) return {false, {}};
    RationalVector y(out.point.begin(), out.point.begin() + static_cast<long>(n));
    return {true, y};
}

PatchLayout enumerate_patches(const BudgetFamily& family) {
    family.validate();
    const std::size_t J = family.num_budgets();

    PatchLayout layout;
    layout.patches.resize(J);
    for (std::size_t j = 0; j < J; ++j) {
        // Exhaust all 2^(J-1) candidate sign vectors in canonical order.
        for (std::size_t code = 0; code < (std::size_t{1} << (J - 1)); ++code) {
            std::vector<Sign> signs(J, Sign::Below);
            std::size_t bit = J - 2;
            for (std::size_t jp = 0; jp < J; ++jp) {
                if (jp == j) continue;
                if ((code >> bit) & 1) signs[jp] = Sign::Above;
                if (bit) --bit;
            }
            FeasibilityResult fr = patch_feasibility(family, j, signs);
            if (!fr.feasible) continue;
            Patch p;
            p.budget = j;
            p.signs = std::move(signs);
            p.canonical_index = layout.patches[j].size();
            p.witness = std::move(fr.witness);
            layout.patches[j].push_back(std::move(p));
        }
    }
    layout.block_offset.resize(J);
    layout.total = 0;
    for (std::size_t j = 0; j < J; ++j) {
        layout.block_offset[j] = layout.total;
        layout.total += layout.patches[j].size();
    }
    return layout;
}

}  // namespace rum
