#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wsd {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitInput = 2,
  kExitSeeding = 3,
  kExitGoldMismatch = 4,
};

// Entry point of the `wsd` tool. `args` includes the program name.
// Human-readable summaries go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Hex SHA-256 of a file's bytes; throws IoError.
std::string file_sha256(const std::string& path);

}  // namespace wsd
