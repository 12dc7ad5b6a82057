#include "rum/lp.hpp"

#include <doctest.h>

#include <random>

using namespace rum;

namespace {

Constraint row(RationalVector c, Relation rel, Rational rhs) {
    return Constraint{std::move(c), rel, std::move(rhs)};
}

}  // namespace

TEST_CASE("one-variable bound") {
    LinearProgram lp;
    lp.objective = {1};
    lp.constraints = {row({1}, Relation::LessEq, 1)};
    LpOutcome out = solve_lp(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == 1);
    CHECK(out.point == RationalVector{1});
}

TEST_CASE("contradictory bounds are infeasible") {
    LinearProgram lp;
    lp.objective = {1};
    lp.constraints = {row({1}, Relation::GreaterEq, 1),
                      row({1}, Relation::LessEq, 0)};
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded is reported") {
    LinearProgram lp;
    lp.objective = {1};
    lp.constraints = {row({1}, Relation::GreaterEq, 0)};
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("minimization and free variables") {
    // min x + y s.t. x + y >= 3, x - y = 1, y free
    LinearProgram lp;
    lp.sense = Sense::Minimize;
    lp.objective = {1, 1};
    lp.lower_bounds = {Rational(0), std::nullopt};
    lp.constraints = {row({1, 1}, Relation::GreaterEq, 3),
                      row({1, -1}, Relation::Equal, 1)};
    LpOutcome out = solve_lp(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == 3);
    CHECK(out.point == RationalVector{2, 1});
}

TEST_CASE("exact fractional optimum") {
    // max 5x + 4y s.t. 6x + 4y <= 24, x + 2y <= 6
    LinearProgram lp;
    lp.objective = {5, 4};
    lp.constraints = {row({6, 4}, Relation::LessEq, 24),
                      row({1, 2}, Relation::LessEq, 6)};
    LpOutcome out = solve_lp(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == 21);
    CHECK(out.point == RationalVector{3, Rational(3, 2)});
}

TEST_CASE("degenerate program terminates (Beale-style)") {
    LinearProgram lp;
    lp.objective = {Rational(3, 4), -150, Rational(1, 50), -6};
    lp.constraints = {
        row({Rational(1, 4), -60, Rational(-1, 25), 9}, Relation::LessEq, 0),
        row({Rational(1, 2), -90, Rational(-1, 50), 3}, Relation::LessEq, 0),
        row({0, 0, 1, 0}, Relation::LessEq, 1)};
    LpOutcome out = solve_lp(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == Rational(1, 20));
}

TEST_CASE("dimension mismatch rejected") {
    LinearProgram lp;
    lp.objective = {1, 1};
    lp.constraints = {row({1}, Relation::LessEq, 1)};
    CHECK_THROWS_AS(solve_lp(lp), std::invalid_argument);
}

TEST_CASE("strong duality on random inequality programs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-4, 5), rhs(0, 8);
    int optimal_pairs = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3, m = 3;
        std::vector<RationalVector> A(m, RationalVector(n));
        RationalVector b(m), c(n);
        for (auto& r : A)
            for (auto& x : r) x = coef(rng);
        for (auto& x : b) x = rhs(rng);  // b >= 0 keeps the primal feasible
        for (auto& x : c) x = coef(rng);

        LinearProgram primal;
        primal.objective = c;
        for (std::size_t i = 0; i < m; ++i)
            primal.constraints.push_back(row(A[i], Relation::LessEq, b[i]));
        LpOutcome p = solve_lp(primal);

        LinearProgram dual;
        dual.sense = Sense::Minimize;
        dual.objective = b;
        for (std::size_t jc = 0; jc < n; ++jc) {
            RationalVector col(m);
            for (std::size_t i = 0; i < m; ++i) col[i] = A[i][jc];
            dual.constraints.push_back(row(col, Relation::GreaterEq, c[jc]));
        }
        LpOutcome d = solve_lp(dual);

        if (p.status == LpStatus::Optimal) {
            REQUIRE(d.status == LpStatus::Optimal);
            CHECK(p.value == d.value);
            ++optimal_pairs;
        } else if (p.status == LpStatus::Unbounded) {
            CHECK(d.status == LpStatus::Infeasible);
        }
    }
    CHECK(optimal_pairs > 10);
}

TEST_CASE("identical inputs give identical outcomes") {
    LinearProgram lp;
    lp.objective = {2, 1, 3};
    lp.constraints = {row({1, 1, 1}, Relation::LessEq, 4),
                      row({1, 0, 2}, Relation::LessEq, 5),
                      row({0, 1, 1}, Relation::GreaterEq, 1)};
    LpOutcome a = solve_lp(lp), b = solve_lp(lp);
    CHECK(a.status == b.status);
    CHECK(a.value == b.value);
    CHECK(a.point == b.point);
}
