#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftkern::tools {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIo = 3,
  kExitKernelValidity = 4,
};

/// Runs the `shiftkern` command line. args[0] is the program name.
/// Informational output goes to `out`; every failure prints one line to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shiftkern::tools
