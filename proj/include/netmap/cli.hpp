#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace netmap {

/// Exit statuses of the netmap tool.
enum ExitCode : int { kOk = 0, kDomainError = 1, kUndecided = 2, kUsage = 64, kInternal = 70 };

/// Runs the netmap tool on args (without the program name).  Reports go to
/// out unless --out names a file; diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netmap
