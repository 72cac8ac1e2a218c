#pragma once

#include <string>
#include <vector>

namespace bagpdb {

struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs the command-line interface on `args` (without the program name).
/// Exit codes: 0 success, 1 domain error, 2 usage or input error.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace bagpdb
