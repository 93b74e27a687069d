#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "f2k/exec/target.hpp"

namespace f2k::exec {

/// One shell command to execute as a job.
struct JobRequest {
  std::string name;  // [A-Za-z0-9_.-]; names the script and bookkeeping files
  std::filesystem::path workdir;  // cwd of the command; receives the script
  std::string command;
  std::filesystem::path stdout_path;
  std::filesystem::path stderr_path;
};

struct JobResult {
  int exit_status = 0;  // 124 when the job hit the wall-clock limit
  double elapsed_seconds = 0.0;
};

/// Exit status reported for a job killed at the wall-clock limit.
inline constexpr int kWallclockExitStatus = 124;

/// Runs jobs to completion. A job's own failure is a normal result; only
/// infrastructure problems raise (ExecutorFailure and subclasses).
class Backend {
 public:
  virtual ~Backend() = default;
  virtual JobResult execute(const JobRequest& job) = 0;
};

/// Runs jobs as local subprocesses under bash, after the env setup lines.
class LocalBackend final : public Backend {
 public:
  explicit LocalBackend(TargetProfile target);
  JobResult execute(const JobRequest& job) override;

 private:
  TargetProfile target_;
};

/// Writes a job script per job, submits it and polls the scheduler.
class BatchBackend final : public Backend {
 public:
  explicit BatchBackend(TargetProfile target);
  JobResult execute(const JobRequest& job) override;

 private:
  TargetProfile target_;
};

std::unique_ptr<Backend> make_backend(const TargetProfile& target);

/// Shebang, directives (job name, partition, time limit, scheduler logs),
/// env setup lines, `cd workdir`, then the payload with its streams redirected
/// and its exit status saved next to the script. Byte-identical for equal inputs.
std::string generate_job_script(const TargetProfile& target, const JobRequest& job);

std::filesystem::path script_path(const JobRequest& job);
std::filesystem::path exit_status_path(const JobRequest& job);

/// Submits `script` (already written to script_path(job)) and blocks until the
/// scheduler reports a terminal state. Throws SchedulerUnavailable when a
/// scheduler command fails and Timeout once the wall-clock limit passes.
JobResult submit_and_wait(const std::filesystem::path& script, const JobRequest& job, const TargetProfile& target);

}  // namespace f2k::exec
