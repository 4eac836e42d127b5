#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bellid {

// exit codes
inline constexpr int exit_pass = 0;
inline constexpr int exit_counterexample = 1;
inline constexpr int exit_config = 2;
inline constexpr int exit_io = 3;

/// Runs one command line (args excludes the program name) against the given
/// streams; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

} // namespace bellid
