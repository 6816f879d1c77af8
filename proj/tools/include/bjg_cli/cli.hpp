#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bjg::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInconsistent = 2,
  kUndetermined = 3,
  kUsage = 64,
  kData = 65,
};

/// Runs the command line; reports go to `out` (unless --output), errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bjg::cli
