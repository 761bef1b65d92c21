#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace steinfx::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitConvergence = 3,
    kExitCheckFailed = 4,
};

/// Entry point shared by main() and the tests. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "3..50,60" -> {3, 4, ..., 50, 60}. Throws std::invalid_argument naming `flag`.
std::vector<int> parse_int_list(const std::string& text, const std::string& flag);
/// "0,2.5,10" -> {0, 2.5, 10}. Throws std::invalid_argument naming `flag`.
std::vector<double> parse_real_list(const std::string& text, const std::string& flag);

}  // namespace steinfx::cli
