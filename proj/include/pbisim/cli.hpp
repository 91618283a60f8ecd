#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pbisim::cli {

enum ExitCode {
  kSuccess = 0,  // also: bisimilar
  kNotBisimilar = 1,
  kUnknown = 2,
  kInputError = 3,
  kResourceGuard = 4,
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pbisim::cli
