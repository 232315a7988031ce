#pragma once

#include <string>
#include <vector>

namespace preslab::cli {

inline constexpr const char* kVersion = "0.1.0";

// Full driver: <subcommand> --config <path> [--threads N] [--out DIR].
// Returns the process exit code: 0 ok, 2 config/usage error, 3 invalid
// system parameters, 4 I/O failure.
int run(const std::vector<std::string>& args);

}  // namespace preslab::cli
