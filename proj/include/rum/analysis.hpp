#pragma once

#include "rum/types.hpp"
#include "rum/xi.hpp"

#include <map>
#include <optional>
#include <vector>

namespace rum {

// Patch-level probability vector in flat coordinates; nonnegative with each
// budget block summing to one.
struct StochasticDemand {
    RationalVector pi;

    // Throws std::invalid_argument on dimension or block-sum failures.
    void validate(const PatchLayout& layout) const;
};

struct RationalityReport {
    RationalVector xi_products;           // per ordinary row
    Rational extended_product;            // always 1
    bool rationalizable = false;
    std::vector<std::size_t> violations;          // rows with xi.pi < 1
    std::vector<std::size_t> minimal_violations;  // inclusion-minimal subset
    Rational d_value;                     // min over extended row set
    std::vector<std::size_t> argmin_rows; // ordinary rows achieving d_value
    bool argmin_extended = false;         // the 1/J row achieves it
};

RationalityReport test_rationalizable(const PatchLayout& layout,
                                      const XiMatrix& xi,
                                      const StochasticDemand& demand);

// Inclusion-minimal violating subfamilies; any decomposition of the demand
// must put positive weight on types cycling inside each of them.
std::vector<std::size_t> minimal_violations(const XiMatrix& xi,
                                            const std::vector<std::size_t>& violations);

struct Decomposition {
    std::map<std::size_t, Rational> weights;  // index into enumeration.all
    Rational total_rational_weight;
    Rational value_p;
};

// Maximal weight on SARP-consistent types among exact decompositions of the
// demand (the primal program). Asserts that a decomposition exists.
Decomposition primal_decompose(const PatchLayout& layout,
                               const TypeEnumeration& types,
                               const StochasticDemand& demand);

// Type classes: for the class of subfamily row r, members are the types a
// with 1(a rational) = xi^J . a; the extended class equals the rational set.
struct TypeClasses {
    // membership[r][t]: type t lies in the class of ordinary row r
    std::vector<std::vector<bool>> membership;
    std::vector<bool> extended;  // == is_rational
};

TypeClasses type_classes(const PatchLayout& layout, const XiMatrix& xi,
                         const TypeEnumeration& types);

struct OptimalityVerdict {
    bool optimal = false;
    // witnessing class when optimal: an ordinary row, or the extended index
    std::optional<std::size_t> witness_row;
    bool witness_extended = false;
};

// A decomposition attains the primal optimum iff its support lies inside a
// single type class.
OptimalityVerdict check_decomposition_optimality(const Decomposition& decomp,
                                                 const TypeClasses& classes);

struct ExchangeResult {
    std::vector<BehavioralType> repaired;
    std::vector<std::size_t> relabeling;  // output k came from input relabeling[k]
};

// Pairwise choice exchanges that preserve the coordinate sum while resolving
// revealed preference cycles in the first type. Requires that no subfamily
// class (including the extended one) contains all inputs; throws
// std::invalid_argument naming a shared class otherwise.
ExchangeResult exchange_repair(const PatchLayout& layout, const XiMatrix& xi,
                               const std::vector<BehavioralType>& inputs);

struct CrossValidation {
    bool agree = true;
    bool xi_verdict = false;       // Xi pi >= 1
    bool lp_feasible = false;      // pi = A* tau*, tau* >= 0 solvable
    Rational d_value;              // finite row minimum
    Rational p_value;              // primal optimum
    Rational dual_lp_value;        // dual program optimum
};

// Independent checks of the row-minimum characterization against the vertex
// LP oracle and direct LP duality. A disagreement is a finding, not an error.
CrossValidation cross_validate(const PatchLayout& layout, const XiMatrix& xi,
                               const TypeEnumeration& types,
                               const StochasticDemand& demand);

// Dual-value shortcut used throughout: D as the minimum over the extended
// row set, never via an LP solve.
Rational dual_value(const XiMatrix& xi, const RationalVector& v);

}  // namespace rum
