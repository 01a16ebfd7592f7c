#pragma once

#include <optional>
#include <string>
#include <variant>

#include "heun_air/forms.hpp"
#include "heun_air/verify.hpp"

namespace heun_air {

enum class Command { detect, solve, convert, eval, verify, paper_suite };

const char* command_name(Command c);
std::optional<Command> command_from_name(const std::string& name);

struct Grid {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 0;
};

inline constexpr std::size_t kMaxGridCount = 100000;

using EquationInput = std::variant<FamilyParams, NormalParams, CanonicalParams>;

struct JobSpec {
    Command command = Command::solve;
    std::optional<EquationInput> input;
    std::optional<Grid> grid;
    std::optional<double> tol;
    std::size_t branch = 0;
    std::optional<std::string> out;
};

// Parses a JSON job description. When command is given (from the command
// line) a "command" field in the document must agree with it. Throws
// SchemaError naming the offending field.
JobSpec parse_spec(const std::string& text, std::optional<Command> command = std::nullopt);

// "start:stop:count"
Grid parse_grid(const std::string& text);

std::vector<double> grid_points(const Grid& g);

struct RunResult {
    int exit_code = 0;   // 0 success, 1 verification failure, 2 input error
    std::string output;  // JSON, or CSV for eval
    std::string message; // diagnostics for stderr
};

RunResult run(const JobSpec& job);

std::string report_to_json(const VerificationReport& r, int indent = 2);

// Entry point of the heun-air executable.
int cli_main(int argc, char** argv);

}  // namespace heun_air
