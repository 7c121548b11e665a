#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "credal/rational.hpp"
#include "credal/setsystem.hpp"

namespace credal {

// Exact-rational problem description, parsed from JSON text. Events are
// 1-indexed ascending integer lists; rationals are "p/q" or integer
// strings. Optional sections cover every subcommand's needs.
struct ProblemFile {
    int n = 0;
    std::optional<std::vector<EventSet>> system;
    std::optional<std::vector<std::pair<EventSet, Rational>>> measure;
    std::optional<std::vector<Rational>> psi;
    std::optional<std::vector<std::vector<Rational>>> gambles;
    std::optional<std::vector<std::pair<Rational, Rational>>> gamma;
    std::optional<std::vector<std::vector<Rational>>> measures;
    std::optional<std::vector<std::pair<EventSet, Rational>>> lower;
    std::optional<std::vector<std::pair<EventSet, Rational>>> upper;
    std::optional<EventSet> event;
    std::optional<EventSet> cond;
    std::optional<int> depth;
};

// Throws ParseError with a field-precise message.
ProblemFile parse_problem(const std::string& json_text);

// Canonical echo; parse_problem(problem_echo(p)) reproduces p exactly.
std::string problem_echo(const ProblemFile& p);

struct RunFlags {
    std::optional<std::string> event;  // overrides the file's event
    std::optional<std::string> cond;   // overrides the file's cond
    std::optional<int> depth;          // overrides the file's depth
    int threads = 1;
};

// Dispatches a subcommand against a parsed problem and returns the
// byte-deterministic result document. Domain errors propagate as
// exceptions; the caller maps them to exit codes.
std::string run_operation(const std::string& subcommand, const ProblemFile& p,
                          const RunFlags& flags);

extern const std::vector<std::string> kSubcommands;

}  // namespace credal
