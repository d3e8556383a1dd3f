#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mlpi {

/// Environment variable naming the directory that relative paths resolve against.
inline constexpr const char* kWorkdirEnv = "MLPI_WORKDIR";

std::filesystem::path resolve_path(const std::string& p);

/// Entry point of the `mlpi` tool. `args` excludes the program name.
/// Primary output goes to `out`; diagnostics and timings go to `err`.
/// Exit codes: 0 ok, 2 usage, 3 parse, 4 verification failed,
/// 5 precision exhausted, 6 degenerate second term, 7 digit-count mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlpi
