#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace effectplan {

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitComputation = 2;

/// Runs one command line. Data goes to `out`; diagnostics and warnings go to
/// `err`. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace effectplan
