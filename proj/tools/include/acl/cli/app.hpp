#pragma once

#include <string>
#include <vector>

namespace acl::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_domain = 2;
inline constexpr int exit_usage = 64;

// Runs the tool on `args` (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args);

} // namespace acl::cli
