#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bethe::cli {

inline constexpr int kSchemaVersion = 1;

/// Exit codes.
enum Exit : int { kOk = 0, kVerdictFalse = 1, kInputError = 2, kInternalLimit = 3 };

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bethe::cli
