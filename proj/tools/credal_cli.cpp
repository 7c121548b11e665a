#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "credal/errors.hpp"
#include "credal/problemio.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact workbench for probabilities on pre-Dynkin systems"};
    std::string operation;
    std::string input;
    std::string event;
    std::string cond;
    int depth = 0;
    int threads = 1;
    app.add_option("operation", operation, "Operation to run")
        ->required()
        ->check(CLI::IsMember(credal::kSubcommands));
    app.add_option("input,--input", input, "Problem file (JSON)")->required();
    auto* event_opt =
        app.add_option("--event", event, "Event override, e.g. 13 or {}");
    auto* cond_opt =
        app.add_option("--cond", cond, "Conditioning event override");
    auto* depth_opt =
        app.add_option("--depth", depth, "Falsifier search depth override");
    app.add_option("--parallel", threads, "Worker threads for per-event solves")
        ->check(CLI::Range(1, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    credal::RunFlags flags;
    if (event_opt->count()) flags.event = event;
    if (cond_opt->count()) flags.cond = cond;
    if (depth_opt->count()) flags.depth = depth;
    flags.threads = threads;

    try {
        std::ifstream in(input);
        if (!in) {
            std::cerr << "error: cannot open " << input << "\n";
            return 2;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        const credal::ProblemFile problem = credal::parse_problem(buffer.str());
        std::cout << credal::run_operation(operation, problem, flags);
        return 0;
    } catch (const credal::SizeLimitExceeded& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
