#pragma once

#include "rum/rational.hpp"

#include <optional>
#include <vector>

namespace rum {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Sense { Maximize, Minimize };

struct Constraint {
    RationalVector coeffs;
    Relation rel = Relation::LessEq;
    Rational rhs = 0;
};

// Constraints are stated in natural (<=, =, >=) form; all standard-form
// reductions happen inside the solver. A missing lower bound means the
// variable is free; an empty lower_bounds vector means every variable is >= 0.
struct LinearProgram {
    Sense sense = Sense::Maximize;
    RationalVector objective;
    std::vector<Constraint> constraints;
    std::vector<std::optional<Rational>> lower_bounds;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    RationalVector point;
};

// Exact two-phase simplex with Bland's rule. Terminates on every well-formed
// input; the returned point is re-verified against every constraint.
// Throws std::invalid_argument on dimension mismatches.
LpOutcome solve_lp(const LinearProgram& lp);

}  // namespace rum
