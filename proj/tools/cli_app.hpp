#pragma once

#include <string>
#include <vector>

namespace orlicz::cli {

struct RunResult {
  int code = 0;      // 0 success, 2 input error, 3 internal tolerance failure
  std::string out;   // stdout payload
  std::string err;   // diagnostics
};

// Parses args (program name excluded, natural order) and runs the requested
// subcommand. Never throws; failures are encoded in the result.
RunResult run(const std::vector<std::string>& args);

}  // namespace orlicz::cli
