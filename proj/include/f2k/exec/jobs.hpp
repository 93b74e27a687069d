#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "f2k/exec/backend.hpp"
#include "f2k/exec/target.hpp"

namespace f2k::exec {

enum class JobKind { build, run };

struct JobOutcome {
  JobKind kind = JobKind::build;
  int exit_status = 0;
  std::filesystem::path stdout_path;
  std::filesystem::path stderr_path;
  /// Present iff kind == run, exit_status == 0 and stdout held a runtime line.
  std::optional<double> parsed_runtime;
  std::optional<std::filesystem::path> profiler_report_path;
  double elapsed_seconds = 0.0;
  std::string command;

  /// Builds need exit 0; runs also need a parsed runtime.
  bool succeeded() const { return exit_status == 0 && (kind == JobKind::build || parsed_runtime.has_value()); }
};

/// Seconds from the last stdout line holding a non-negative decimal with
/// exactly six fractional digits; the last such number on that line wins.
std::optional<double> parse_runtime(std::string_view stdout_text);

/// Where build_program and run_program put their logs.
struct JobFiles {
  std::filesystem::path log_dir;
  std::string stem;  // logs are <stem>.log and <stem>.err
};

/// Compiles `source` to `exe` with the target's compile template. A stale
/// `exe` is removed first; exit 0 without an executable counts as failure.
JobOutcome build_program(const std::filesystem::path& source, const std::filesystem::path& exe,
                         const TargetProfile& target, Backend& backend, const JobFiles& files);

/// Runs `exe n reps` with cwd `files.log_dir`. With `profile` on a target that
/// has a profiler, the run is wrapped and the report lands next to the logs.
JobOutcome run_program(const std::filesystem::path& exe, std::int64_t n, std::int64_t reps, bool profile,
                       const TargetProfile& target, Backend& backend, const JobFiles& files);

/// build_program with the Fortran compile command.
JobOutcome compile_baseline(const std::filesystem::path& fortran_source, const std::filesystem::path& exe,
                            const TargetProfile& target, Backend& backend, const JobFiles& files);

}  // namespace f2k::exec
