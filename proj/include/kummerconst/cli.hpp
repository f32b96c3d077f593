#pragma once

#include <ostream>

namespace kummerconst::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kDomain = 3,
  kPrecision = 4,
  kResource = 5,
};

/// Runs one command line. JSON (or text with --text) goes to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kummerconst::cli
