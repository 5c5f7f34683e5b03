#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orlicz {

/// Process exit codes.
enum ExitCode : int {
  exit_ok = 0,
  exit_verify_failed = 1,
  exit_not_converged = 2,
  exit_input_error = 3,
};

/// Runs one command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Fixed notation with 12 decimals for 1e-3 <= |v| < 1e15, 12 significant digits otherwise.
std::string format_output(double v);

}  // namespace orlicz
