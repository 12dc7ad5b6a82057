#include "rum/problem.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Exact tests for random-utility consistency of stochastic demand"};
    app.require_subcommand(1);

    std::string problem_path = "-";
    rum::CommandOptions options;
    std::string format = "text";

    const std::vector<std::string> commands = {
        "patches", "xi", "test", "weight", "decompose",
        "classes", "repair", "chain", "verify", "tum"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("problem", problem_path,
                        "problem file (JSON); '-' reads standard input");
        sub->add_option("--index-map", options.index_map_path,
                        "patch relabeling file (overrides the problem's map)");
        sub->add_option("--max-types", options.max_types, "type enumeration cap");
        sub->add_option("--seed", options.seed, "seed for sampled probes");
        sub->add_option("--format", format, "text|machine")
            ->check(CLI::IsMember({"text", "machine"}));
    }

    CLI11_PARSE(app, argc, argv);
    options.format =
        format == "machine" ? rum::ReportFormat::Machine : rum::ReportFormat::Text;

    try {
        rum::ProblemFile problem = rum::parse_problem_path(problem_path);
        rum::Report report = rum::run_command(
            app.get_subcommands().front()->get_name(), problem, options);
        std::cout << (options.format == rum::ReportFormat::Machine
                          ? report.machine_text
                          : report.text)
                  << "\n";
        return report.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
