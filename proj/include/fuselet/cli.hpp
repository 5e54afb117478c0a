#pragma once

#include <iosfwd>

namespace fuselet::cli {

/// Exit codes of the `fuselet` tool.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,       // invalid flags or configuration
  kIo = 3,          // unreadable input or unwritable output
  kDimensions = 4,  // inputs of different sizes
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fuselet::cli
