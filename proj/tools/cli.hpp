#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nxent::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs `nxent <command> --config <path> [--out <dir>] [--seed <int>]`.
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nxent::cli
