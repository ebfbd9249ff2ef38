#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace perimeter::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInvalidInput = 2 };

/// Runs the command line `args` (program name excluded). Results go to the
/// --out file or to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace perimeter::cli
