#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gtrig::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDomain = 2,
  kConvergence = 3,
  kVerificationFailed = 4,
};

// Runs one invocation. args excludes the program name. Tables go to out
// unless --output names a file; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gtrig::cli
