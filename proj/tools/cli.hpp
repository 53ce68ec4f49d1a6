#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dsrgkit::cli {

// Exit codes shared by every command.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;  // not a DSRG, or no construction exists
inline constexpr int kInputError = 2;
inline constexpr int kCapError = 3;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsrgkit::cli
