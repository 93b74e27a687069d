#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace f2k::exec {

struct ProcessSpec {
  std::vector<std::string> argv;  // argv[0] is resolved through PATH
  std::filesystem::path cwd;      // empty: inherit
  /// Empty: captured into ProcessResult instead of written to a file.
  std::filesystem::path stdout_path;
  std::filesystem::path stderr_path;
  std::optional<std::chrono::milliseconds> timeout;
};

struct ProcessResult {
  int exit_status = 0;  // 128 + signal number when killed by a signal
  bool timed_out = false;  // the whole process group was killed
  double elapsed_seconds = 0.0;
  std::string stdout_text;  // only when not redirected to a file
  std::string stderr_text;
};

/// Spawns `spec.argv` in its own process group with stdin from /dev/null.
/// Throws ExecutorFailure when the process cannot be started.
ProcessResult run_process(const ProcessSpec& spec);

/// `/bin/bash -c script` with the remaining settings from `spec`.
ProcessResult run_shell(std::string_view script, ProcessSpec spec = {});

/// Quotes `s` for a POSIX shell when it holds anything beyond [A-Za-z0-9_./+=:,@%-].
std::string shell_quote(std::string_view s);

}  // namespace f2k::exec
