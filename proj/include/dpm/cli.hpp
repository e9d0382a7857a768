#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dpm {

/// Exit codes of the command-line front end.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_failed_check = 2;

/// Runs one command line (without the program name). Diagnostics go to
/// `err`, reports to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpm
