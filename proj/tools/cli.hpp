#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tft::cli {

enum ExitCode {
  kOk = 0,
  kUsage = 2,
  kInvalidInput = 3,
  kNumeric = 4,
  kIo = 5,
};

/// Runs one invocation. `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace tft::cli
