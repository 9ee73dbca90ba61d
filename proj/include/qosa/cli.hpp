#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qosa::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Parses `args` (without the program name), runs one command and writes the
/// report to `out` or to the --out file. Messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qosa::cli
