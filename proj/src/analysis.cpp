#include "rum/analysis.hpp"

#include "rum/lp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rum {

void StochasticDemand::validate(const PatchLayout& layout) const {
    if (pi.size() != layout.total)
        throw std::invalid_argument("demand vector has wrong length");
    for (const auto& x : pi)
        if (x < 0) throw std::invalid_argument("probability must be nonnegative");
    for (std::size_t j = 0; j < layout.patches.size(); ++j) {
        Rational sum = 0;
        for (std::size_t i = 0; i < layout.count(j); ++i)
            sum += pi[layout.flat(j, i)];
        if (sum != 1) {
            std::ostringstream os;
            os << "budget " << j + 1 << " block sums to " << sum << ", expected 1";
            throw std::invalid_argument(os.str());
        }
    }
}

Rational dual_value(const XiMatrix& xi, const RationalVector& v) {
    Rational best = xi.extended_dot(v);
    for (std::size_t r = 0; r < xi.rows.size(); ++r)
        best = std::min(best, xi.row_dot(r, v));
    return best;
}

std::vector<std::size_t> minimal_violations(
    const XiMatrix& xi, const std::vector<std::size_t>& violations) {
    std::vector<std::size_t> out;
    for (std::size_t r : violations) {
        bool minimal = true;
        for (std::size_t r2 : violations) {
            if (r2 == r) continue;
            const auto& a = xi.subfamilies[r2];
            const auto& b = xi.subfamilies[r];
            if (a.size() < b.size() &&
                std::includes(b.begin(), b.end(), a.begin(), a.end()))
            {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(r);
    }
    return out;
}

RationalityReport test_rationalizable(const PatchLayout& layout,
                                      const XiMatrix& xi,
                                      const StochasticDemand& demand) {
    demand.validate(layout);
    RationalityReport rep;
    rep.xi_products.resize(xi.rows.size());
    rep.extended_product = xi.extended_dot(demand.pi);
    for (std::size_t r = 0; r < xi.rows.size(); ++r) {
        rep.xi_products[r] = xi.row_dot(r, demand.pi);
        if (rep.xi_products[r] < 1) rep.violations.push_back(r);
    }
    rep.rationalizable = rep.violations.empty();
    rep.minimal_violations = minimal_violations(xi, rep.violations);

    rep.d_value = rep.extended_product;
    for (std::size_t r = 0; r < xi.rows.size(); ++r)
        rep.d_value = std::min(rep.d_value, rep.xi_products[r]);
    for (std::size_t r = 0; r < xi.rows.size(); ++r)
        if (rep.xi_products[r] == rep.d_value) rep.argmin_rows.push_back(r);
    rep.argmin_extended = rep.extended_product == rep.d_value;
    return rep;
}

Decomposition primal_decompose(const PatchLayout& layout,
                               const TypeEnumeration& types,
                               const StochasticDemand& demand) {
    demand.validate(layout);
    const std::size_t T = types.all.size();

    LinearProgram lp;
    lp.sense = Sense::Maximize;
    lp.objective.resize(T);
    for (std::size_t t = 0; t < T; ++t)
        lp.objective[t] = types.is_rational[t] ? 1 : 0;
    lp.constraints.resize(layout.total);
    for (std::size_t c = 0; c < layout.total; ++c) {
        lp.constraints[c].coeffs.assign(T, 0);
        lp.constraints[c].rel = Relation::Equal;
        lp.constraints[c].rhs = demand.pi[c];
    }
    for (std::size_t t = 0; t < T; ++t) {
        const auto& choice = types.all[t].choice;
        for (std::size_t j = 0; j < choice.size(); ++j)
            lp.constraints[layout.flat(j, choice[j])].coeffs[t] = 1;
    }

    LpOutcome out = solve_lp(lp);
    if (out.status != LpStatus::Optimal)
        throw std::logic_error("demand admits no decomposition over all types");

    Decomposition d;
    d.value_p = out.value;
    d.total_rational_weight = 0;
    for (std::size_t t = 0; t < T; ++t) {
        if (out.point[t] == 0) continue;
        d.weights[t] = out.point[t];
        if (types.is_rational[t]) d.total_rational_weight += out.point[t];
    }
    return d;
}

TypeClasses type_classes(const PatchLayout& layout, const XiMatrix& xi,
                         const TypeEnumeration& types) {
    const std::size_t T = types.all.size();
    TypeClasses cls;
    cls.extended = types.is_rational;
    cls.membership.assign(xi.rows.size(), std::vector<bool>(T, false));
    for (std::size_t t = 0; t < T; ++t) {
        auto flat = types.all[t].flat(layout);
        Rational d = types.is_rational[t] ? 1 : 0;
        for (std::size_t r = 0; r < xi.rows.size(); ++r) {
            Rational prod = 0;
            for (std::size_t c = 0; c < xi.cols; ++c)
                if (xi.rows[r][c] && flat[c]) prod += 1;
            cls.membership[r][t] = prod == d;
        }
    }
    return cls;
}

OptimalityVerdict check_decomposition_optimality(const Decomposition& decomp,
                                                 const TypeClasses& classes) {
    std::vector<std::size_t> support;
    for (const auto& [t, w] : decomp.weights)
        if (w > 0) support.push_back(t);

    auto all_in = [&](const std::vector<bool>& member) {
        return std::all_of(support.begin(), support.end(),
                           [&](std::size_t t) { return member[t]; });
    };
    if (all_in(classes.extended)) return {true, std::nullopt, true};
    for (std::size_t r = 0; r < classes.membership.size(); ++r)
        if (all_in(classes.membership[r])) return {true, r, false};
    return {false, std::nullopt, false};
}

namespace {

Rational xi_row_dot_type(const XiMatrix& xi, const PatchLayout& layout,
                         std::size_t r, const BehavioralType& a) {
    Rational s = 0;
    for (std::size_t j = 0; j < a.choice.size(); ++j)
        if (xi.rows[r][layout.flat(j, a.choice[j])]) s += 1;
    return s;
}

// Chain walk for a pair of irrational types: place one budget at
// a time, always keeping an undominated choice for the first type in the set
// of budgets not yet placed.
void chain_walk_pair(const PatchLayout& layout, BehavioralType& a1,
                     BehavioralType& a2) {
    const std::size_t J = layout.patches.size();
    std::vector<std::size_t> remaining(J);
    for (std::size_t j = 0; j < J; ++j) remaining[j] = j;

    auto undominated_in = [&](const BehavioralType& a, std::size_t j,
                              const std::vector<std::size_t>& set) {
        const Patch& p = layout.patch(j, a.choice[j]);
        for (std::size_t jp : set)
            if (jp != j && p.signs[jp] != Sign::Above) return false;
        return true;
    };

    while (remaining.size() >= 2) {
        std::size_t pick = J;
        bool swap_here = false;
        for (std::size_t j : remaining)
            if (undominated_in(a1, j, remaining)) { pick = j; break; }
        if (pick == J) {
            for (std::size_t j : remaining)
                if (undominated_in(a2, j, remaining)) {
                    pick = j;
                    swap_here = true;
                    break;
                }
        }
        if (pick == J)
            throw std::logic_error("chain walk stuck; shared class precondition broken");
        if (swap_here) std::swap(a1.choice[pick], a2.choice[pick]);
        remaining.erase(std::find(remaining.begin(), remaining.end(), pick));
    }
}

}  // namespace

ExchangeResult exchange_repair(const PatchLayout& layout, const XiMatrix& xi,
                               const std::vector<BehavioralType>& inputs) {
    const std::size_t m = inputs.size();
    if (m < 2) throw std::invalid_argument("need at least two types");

    std::vector<bool> rational(m);
    for (std::size_t k = 0; k < m; ++k)
        rational[k] = satisfies_sarp(layout, inputs[k]).consistent;

    auto d_of = [&](std::size_t k) { return Rational(rational[k] ? 1 : 0); };

    // refuse when a class contains every input
    if (std::all_of(rational.begin(), rational.end(), [](bool b) { return b; }))
        throw std::invalid_argument("all inputs share the extended class");
    for (std::size_t r = 0; r < xi.rows.size(); ++r) {
        bool shared = true;
        for (std::size_t k = 0; k < m && shared; ++k)
            if (xi_row_dot_type(xi, layout, r, inputs[k]) != d_of(k)) shared = false;
        if (shared) {
            std::ostringstream os;
            os << "inputs share class {";
            for (std::size_t i = 0; i < xi.subfamilies[r].size(); ++i)
                os << (i ? "," : "") << xi.subfamilies[r][i] + 1;
            os << "}";
            throw std::invalid_argument(os.str());
        }
    }

    // irrational types first, stable
    ExchangeResult res;
    for (std::size_t k = 0; k < m; ++k)
        if (!rational[k]) res.relabeling.push_back(k);
    for (std::size_t k = 0; k < m; ++k)
        if (rational[k]) res.relabeling.push_back(k);
    for (std::size_t k : res.relabeling) res.repaired.push_back(inputs[k]);

    std::size_t irrational_count =
        static_cast<std::size_t>(std::count(rational.begin(), rational.end(), false));
    if (irrational_count < 2) {
        // a single irrational input: the uniform mixture is already
        // rationalizable, nothing to exchange
        return res;
    }

    if (m == 2) {
        chain_walk_pair(layout, res.repaired[0], res.repaired[1]);
        return res;
    }

    // m > 2. When the two leading irrational types share no class, the pair
    // walk already applies to them and the rest stays untouched. Otherwise
    // their shared class persists under exchanges and the shrinking loop
    // below is guaranteed to make progress.
    {
        bool pair_shares = false;
        for (std::size_t r = 0; r < xi.rows.size() && !pair_shares; ++r)
            pair_shares = xi_row_dot_type(xi, layout, r, res.repaired[0]) == 0 &&
                          xi_row_dot_type(xi, layout, r, res.repaired[1]) == 0;
        if (!pair_shares) {
            chain_walk_pair(layout, res.repaired[0], res.repaired[1]);
            return res;
        }
    }

    // shrink the set of subfamilies whose row value exceeds D on the
    // first type while matching D on the rest, one pairwise exchange at a time
    auto d_after = [&](std::size_t k) {
        return Rational(satisfies_sarp(layout, res.repaired[k]).consistent ? 1 : 0);
    };
    for (std::size_t guard = 0; guard <= xi.rows.size() + 1; ++guard) {
        std::vector<std::size_t> candidates;
        for (std::size_t r = 0; r < xi.rows.size(); ++r) {
            if (xi_row_dot_type(xi, layout, r, res.repaired[0]) <= d_after(0))
                continue;
            bool rest_match = true;
            for (std::size_t k = 1; k < m && rest_match; ++k)
                if (xi_row_dot_type(xi, layout, r, res.repaired[k]) != d_after(k))
                    rest_match = false;
            if (rest_match) candidates.push_back(r);
        }
        if (candidates.empty()) return res;
        if (guard == xi.rows.size() + 1)
            throw std::logic_error("exchange loop failed to shrink");

        // maximal wrt inclusion; ties to largest cardinality, then
        // lexicographically last
        std::size_t best = candidates[0];
        for (std::size_t r : candidates) {
            bool maximal = true;
            for (std::size_t r2 : candidates) {
                if (r2 == r) continue;
                const auto& a = xi.subfamilies[r];
                const auto& b = xi.subfamilies[r2];
                if (a.size() < b.size() &&
                    std::includes(b.begin(), b.end(), a.begin(), a.end()))
                {
                    maximal = false;
                    break;
                }
            }
            if (!maximal) continue;
            const auto& cur = xi.subfamilies[best];
            const auto& cand = xi.subfamilies[r];
            if (cand.size() > cur.size() ||
                (cand.size() == cur.size() && cand >= cur))
                best = r;
        }

        std::size_t swap_budget = layout.patches.size();
        for (std::size_t j : xi.subfamilies[best]) {
            if (is_undominated(layout.patch(j, res.repaired[0].choice[j]),
                               xi.subfamilies[best]))
            {
                swap_budget = j;
                break;
            }
        }
        if (swap_budget == layout.patches.size())
            throw std::logic_error("no undominated choice in the selected class");
        std::swap(res.repaired[0].choice[swap_budget],
                  res.repaired[1].choice[swap_budget]);
    }
    return res;
}

CrossValidation cross_validate(const PatchLayout& layout, const XiMatrix& xi,
                               const TypeEnumeration& types,
                               const StochasticDemand& demand) {
    CrossValidation cv;
    RationalityReport rep = test_rationalizable(layout, xi, demand);
    cv.xi_verdict = rep.rationalizable;
    cv.d_value = rep.d_value;

    // oracle 1: feasibility of pi = A* tau*, tau* >= 0
    {
        LinearProgram lp;
        lp.objective.assign(types.rational.size(), 0);
        lp.constraints.resize(layout.total);
        for (std::size_t c = 0; c < layout.total; ++c) {
            lp.constraints[c].coeffs.assign(types.rational.size(), 0);
            lp.constraints[c].rel = Relation::Equal;
            lp.constraints[c].rhs = demand.pi[c];
        }
        for (std::size_t t = 0; t < types.rational.size(); ++t) {
            const auto& choice = types.rational[t].choice;
            for (std::size_t j = 0; j < choice.size(); ++j)
                lp.constraints[layout.flat(j, choice[j])].coeffs[t] = 1;
        }
        cv.lp_feasible = solve_lp(lp).status == LpStatus::Optimal;
    }

    // oracle 2: primal optimum over all types
    cv.p_value = primal_decompose(layout, types, demand).value_p;

    // oracle 3: the dual program, solved as an LP over free row vectors
    {
        LinearProgram lp;
        lp.sense = Sense::Minimize;
        lp.objective = demand.pi;
        lp.lower_bounds.assign(layout.total, std::nullopt);
        for (std::size_t t = 0; t < types.all.size(); ++t) {
            Constraint c;
            c.coeffs.assign(layout.total, 0);
            const auto& choice = types.all[t].choice;
            for (std::size_t j = 0; j < choice.size(); ++j)
                c.coeffs[layout.flat(j, choice[j])] = 1;
            c.rel = Relation::GreaterEq;
            c.rhs = types.is_rational[t] ? 1 : 0;
            lp.constraints.push_back(c);
        }
        LpOutcome out = solve_lp(lp);
        if (out.status != LpStatus::Optimal)
            throw std::logic_error("dual program must be solvable");
        cv.dual_lp_value = out.value;
    }

    cv.agree = cv.xi_verdict == cv.lp_feasible && cv.d_value == cv.p_value &&
               cv.dual_lp_value == cv.d_value;
    return cv;
}

}  // namespace rum
