#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinalias::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kBadParameters = 2,
  kBadInput = 3,
};

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinalias::cli
