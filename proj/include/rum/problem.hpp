#pragma once

#include "rum/analysis.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rum {

// Display relabeling of patches: per budget, map[d] is the canonical patch
// index shown at display position d. When a problem carries one, its pi and
// type vectors are interpreted in display order.
using IndexMap = std::vector<std::vector<std::size_t>>;

struct ProblemFile {
    std::size_t n = 0;
    std::vector<RationalVector> prices;              // J x n
    std::optional<std::vector<RationalVector>> pi;   // J blocks
    std::optional<std::vector<std::vector<int>>> types;  // flat 0/1 vectors
    std::optional<IndexMap> index_map;

    BudgetFamily family() const;
};

// Throws std::invalid_argument naming the offending field.
ProblemFile parse_problem(std::istream& in);
ProblemFile parse_problem_path(const std::string& path);  // "-" reads stdin

enum class ReportFormat { Text, Machine };

struct CommandOptions {
    std::uint64_t max_types = kDefaultTypeCap;
    std::uint64_t seed = 1;
    ReportFormat format = ReportFormat::Text;
    std::optional<std::string> index_map_path;  // overrides the problem's map
};

// Exit codes: 0 success (and "rationalizable" for `test`), 1 not
// rationalizable (`test` only), 2 input error (raised as exceptions by
// run_command and mapped by the CLI).
struct Report {
    std::string text;
    std::string machine_text;  // JSON document, all values as rational strings
    int exit_code = 0;
};

// command is one of: patches, xi, test, weight, decompose, classes, repair,
// chain, verify, tum.
Report run_command(const std::string& command, const ProblemFile& problem,
                   const CommandOptions& options);

}  // namespace rum
