#include "rum/lp.hpp"

#include <stdexcept>

namespace rum {

namespace {

// Dense exact tableau: rows = B^{-1}A, rhs = B^{-1}b.
struct Tableau {
    std::size_t m = 0, n = 0;
    std::vector<RationalVector> rows;
    RationalVector rhs;
    std::vector<std::size_t> basis;  // basic column per row

    void pivot(std::size_t r, std::size_t c) {
        Rational p = rows[r][c];
        for (std::size_t j = 0; j < n; ++j) rows[r][j] /= p;
        rhs[r] /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
            rhs[i] -= f * rhs[r];
        }
        basis[r] = c;
    }
};

// Maximizes cost over the tableau with Bland's rule (smallest entering
// index; leaving row by min ratio, ties to smallest basic index).
// allowed[j] == false masks a column out entirely.
// Returns false when unbounded.
bool run_simplex(Tableau& t, const RationalVector& cost,
                 const std::vector<bool>& allowed) {
    // reduced cost row, kept current across pivots
    RationalVector red(t.n);
    std::vector<bool> is_basic(t.n, false);
    for (auto b : t.basis) is_basic[b] = true;
    for (std::size_t j = 0; j < t.n; ++j) {
        Rational r = cost[j];
        for (std::size_t i = 0; i < t.m; ++i)
            if (cost[t.basis[i]] != 0) r -= cost[t.basis[i]] * t.rows[i][j];
        red[j] = r;
    }
    for (;;) {
        std::size_t enter = t.n;
        for (std::size_t j = 0; j < t.n; ++j) {
            if (!allowed[j] || is_basic[j]) continue;
            if (red[j] > 0) { enter = j; break; }
        }
        if (enter == t.n) return true;  // optimal

        std::size_t leave = t.m;
        Rational best_ratio = 0;
        for (std::size_t i = 0; i < t.m; ++i) {
            if (t.rows[i][enter] <= 0) continue;
            Rational ratio = t.rhs[i] / t.rows[i][enter];
            if (leave == t.m || ratio < best_ratio ||
                (ratio == best_ratio && t.basis[i] < t.basis[leave]))
            {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == t.m) return false;  // unbounded
        is_basic[t.basis[leave]] = false;
        is_basic[enter] = true;
        t.pivot(leave, enter);
        Rational f = red[enter];
        for (std::size_t j = 0; j < t.n; ++j)
            if (t.rows[leave][j] != 0) red[j] -= f * t.rows[leave][j];
        red[enter] = 0;
    }
}

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
    const std::size_t nvars = lp.objective.size();
    for (const auto& c : lp.constraints)
        if (c.coeffs.size() != nvars)
            throw std::invalid_argument("constraint row length != objective length");
    if (!lp.lower_bounds.empty() && lp.lower_bounds.size() != nvars)
        throw std::invalid_argument("lower_bounds length != objective length");

    // Standard form: every structural variable becomes one or two
    // nonnegative columns (shift by the lower bound; split free variables).
    struct VarMap {
        std::size_t pos;                  // column of the positive part
        std::size_t neg;                  // column of the negative part (free only)
        bool is_free;
        Rational shift;
    };
    std::vector<VarMap> vmap(nvars);
    std::size_t ncols = 0;
    for (std::size_t v = 0; v < nvars; ++v) {
        std::optional<Rational> lb =
            lp.lower_bounds.empty() ? std::optional<Rational>(Rational(0))
                                    : lp.lower_bounds[v];
        if (lb) {
            vmap[v] = {ncols, 0, false, *lb};
            ncols += 1;
        } else {
            vmap[v] = {ncols, ncols + 1, true, Rational(0)};
            ncols += 2;
        }
    }
    const std::size_t nstruct = ncols;
    const std::size_t m = lp.constraints.size();

    // Build rows over structural columns; rhs adjusted by shifts.
    std::vector<RationalVector> rows(m, RationalVector(nstruct, 0));
    RationalVector rhs(m, 0);
    std::vector<Relation> rel(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        Rational b = c.rhs;
        for (std::size_t v = 0; v < nvars; ++v) {
            const auto& vm = vmap[v];
            rows[i][vm.pos] += c.coeffs[v];
            if (vm.is_free)
                rows[i][vm.neg] -= c.coeffs[v];
            else
                b -= c.coeffs[v] * vm.shift;
        }
        rhs[i] = b;
        rel[i] = c.rel;
        if (b < 0) {  // make rhs nonnegative
            for (auto& x : rows[i]) x = -x;
            rhs[i] = -b;
            if (rel[i] == Relation::LessEq) rel[i] = Relation::GreaterEq;
            else if (rel[i] == Relation::GreaterEq) rel[i] = Relation::LessEq;
        }
    }

    // Append slack/surplus columns, then artificials where no unit column
    // is available.
    std::size_t nslack = 0;
    for (auto r : rel)
        if (r != Relation::Equal) ++nslack;
    Tableau t;
    t.m = m;
    std::vector<std::size_t> artificial_cols;
    {
        std::size_t slack_at = nstruct;
        std::size_t total = nstruct + nslack;  // artificials appended below
        std::vector<std::size_t> art_row;
        for (std::size_t i = 0; i < m; ++i) {
            rows[i].resize(nstruct + nslack, Rational(0));
            if (rel[i] == Relation::LessEq)
                rows[i][slack_at++] = 1;
            else if (rel[i] == Relation::GreaterEq)
                rows[i][slack_at++] = -1;
        }
        t.basis.assign(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            // a <= row's slack is a ready-made basic column
            bool have_basic = false;
            if (rel[i] == Relation::LessEq) {
                for (std::size_t j = nstruct; j < nstruct + nslack; ++j)
                    if (rows[i][j] == 1) { t.basis[i] = j; have_basic = true; break; }
            }
            if (!have_basic) {
                art_row.push_back(i);
                t.basis[i] = total++;
            }
        }
        t.n = total;
        for (std::size_t i = 0; i < m; ++i) rows[i].resize(t.n, Rational(0));
        for (std::size_t k = 0; k < art_row.size(); ++k) {
            std::size_t col = nstruct + nslack + k;
            rows[art_row[k]][col] = 1;
            artificial_cols.push_back(col);
        }
    }
    t.rows = std::move(rows);
    t.rhs = std::move(rhs);

    std::vector<bool> allowed(t.n, true);

    // Phase one: maximize -sum(artificials).
    if (!artificial_cols.empty()) {
        RationalVector phase1(t.n, 0);
        for (auto c : artificial_cols) phase1[c] = -1;
        run_simplex(t, phase1, allowed);  // bounded below by construction
        Rational infeas = 0;
        for (std::size_t i = 0; i < t.m; ++i)
            if (phase1[t.basis[i]] != 0) infeas += t.rhs[i];
        if (infeas != 0) return {LpStatus::Infeasible, Rational(0), {}};

        // Drive remaining artificials out of the basis; a row with no
        // eligible pivot is redundant and gets dropped.
        for (std::size_t i = 0; i < t.m;) {
            if (phase1[t.basis[i]] == 0) { ++i; continue; }
            std::size_t c = t.n;
            for (std::size_t j = 0; j < nstruct + nslack; ++j)
                if (t.rows[i][j] != 0) { c = j; break; }
            if (c < t.n) {
                t.pivot(i, c);
                ++i;
            } else {
                t.rows.erase(t.rows.begin() + static_cast<long>(i));
                t.rhs.erase(t.rhs.begin() + static_cast<long>(i));
                t.basis.erase(t.basis.begin() + static_cast<long>(i));
                --t.m;
            }
        }
        for (auto c : artificial_cols) allowed[c] = false;
    }

    // Phase two.
    RationalVector cost(t.n, 0);
    for (std::size_t v = 0; v < nvars; ++v) {
        Rational cv = lp.objective[v];
        if (lp.sense == Sense::Minimize) cv = -cv;
        cost[vmap[v].pos] += cv;
        if (vmap[v].is_free) cost[vmap[v].neg] -= cv;
    }
    if (!run_simplex(t, cost, allowed))
        return {LpStatus::Unbounded, Rational(0), {}};

    RationalVector std_point(t.n, 0);
    for (std::size_t i = 0; i < t.m; ++i) std_point[t.basis[i]] = t.rhs[i];
    RationalVector point(nvars, 0);
    for (std::size_t v = 0; v < nvars; ++v) {
        point[v] = std_point[vmap[v].pos] + vmap[v].shift;
        if (vmap[v].is_free) point[v] -= std_point[vmap[v].neg];
    }

    // Exactness check: the point must satisfy every original constraint and
    // attain the reported value.
    Rational value = dot(lp.objective, point);
    for (const auto& c : lp.constraints) {
        Rational lhs = dot(c.coeffs, point);
        bool ok = (c.rel == Relation::LessEq)    ? lhs <= c.rhs
                  : (c.rel == Relation::Equal)   ? lhs == c.rhs
                                                 : lhs >= c.rhs;
        if (!ok) throw std::logic_error("simplex returned an infeasible point");
    }
    for (std::size_t v = 0; v < nvars; ++v) {
        std::optional<Rational> lb =
            lp.lower_bounds.empty() ? std::optional<Rational>(Rational(0))
                                    : lp.lower_bounds[v];
        if (lb && point[v] < *lb)
            throw std::logic_error("simplex violated a variable bound");
    }
    return {LpStatus::Optimal, value, point};
}

}  // namespace rum
