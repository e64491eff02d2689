#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lipjet::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kRejected = 3,
  kSoundnessViolation = 4,
};

/// Runs `lipjet` with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lipjet::cli
