#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include "f2k/text.hpp"

namespace f2k::exec {

enum class BackendKind { local, batch };
enum class ProfilerKind { none, ncu_like, rocprof_like };

std::string_view to_string(BackendKind kind);
std::string_view to_string(ProfilerKind kind);
BackendKind parse_backend_kind(std::string_view name);  // throws ConfigInvalid
ProfilerKind parse_profiler_kind(std::string_view name);  // throws ConfigInvalid

/// How jobs reach a batch scheduler. Command templates run under /bin/bash.
struct BatchSettings {
  std::string directive_prefix = "#SBATCH";
  std::string partition;  // omitted from the script when empty
  std::vector<std::string> extra_directives;  // e.g. "--gpus=1"
  std::string submit_command = "sbatch --parsable {script}";  // prints the job id
  std::string status_command = "squeue -h -j {job_id} -o %T || sacct -n -X -j {job_id} -o State";
  std::string cancel_command = "scancel {job_id}";  // may be empty
  std::chrono::milliseconds poll_interval{5000};
  /// Scheduler states that mean the job is over; anything else keeps polling.
  std::vector<std::string> success_states{"COMPLETED"};
  std::vector<std::string> failure_states{"FAILED",    "CANCELLED",     "TIMEOUT", "OUT_OF_MEMORY",
                                          "NODE_FAIL", "BOOT_FAIL",     "PREEMPTED", "DEADLINE"};
};

/// Everything machine-specific about building and running on one system.
struct TargetProfile {
  std::string target_id;
  BackendKind backend = BackendKind::local;
  std::vector<std::string> env_setup_commands;  // opaque shell lines run before every job
  std::string compile_command_template = "g++ -O3 -std=c++17 {source} -o {exe}";  // {source} {exe}
  std::string run_command_template = "{exe} {n} {reps}";  // {exe} {n} {reps}
  std::string fortran_compile_command = "gfortran -O3 -fopenmp {source} -o {exe}";  // {source} {exe}
  ProfilerKind profiler = ProfilerKind::none;
  /// Wraps a run; must write the report to {report}. {exe} {n} {reps} {report}
  std::string profile_command_template;
  double wallclock_limit_minutes = 30.0;
  BatchSettings batch;

  /// Throws ConfigInvalid when a template misses a required placeholder or
  /// uses an unknown one.
  void validate() const;

  std::chrono::milliseconds wallclock_limit() const;
  /// Report file extension for the profiler kind: ".txt", ".csv" or "".
  std::string_view report_extension() const;
};

/// Expands a command template, shell-quoting each value.
std::string expand_command(std::string_view tmpl, const text::Substitutions& values);

}  // namespace f2k::exec
