#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dchsbm::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs the command line (without the program name). Exit codes: 0 success,
/// 1 runtime failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dchsbm::cli
