#pragma once

#include <string>
#include <vector>

namespace strongcol {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;          // success, certificate verified
inline constexpr int exit_impossible = 2;  // certified impossibility
inline constexpr int exit_budget = 3;      // budget exhausted or shortfall
inline constexpr int exit_usage = 64;      // bad invocation or input

struct command_result {
    int exit_code = exit_ok;
    std::string output; // exactly what the process would print on stdout
};

// The whole CLI behind a function so tests can drive it in-process. `args`
// excludes the program name. Output for a fixed seed is byte-stable.
command_result run_command(const std::vector<std::string>& args);

// Thin wrapper for main(): runs, prints, returns the exit code.
int cli_main(int argc, char** argv);

} // namespace strongcol
