#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace moral::cli {

enum ExitCode : int {
  kSuccess = 0,
  kPropertyFails = 1,  // a counterexample or certificate was emitted
  kUsageError = 2,
};

/// Runs one command line. args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moral::cli
