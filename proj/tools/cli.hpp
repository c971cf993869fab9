#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mdsrepair::cli {

enum ExitCode : int {
  kOk = 0,
  kVerdictFailure = 1,
  kParameterRejected = 2,
  kMalformedInput = 3,
  kBudgetExceeded = 4,
};

/// Runs one command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mdsrepair::cli
