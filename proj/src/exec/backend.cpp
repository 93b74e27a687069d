#include "f2k/exec/backend.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "f2k/errors.hpp"
#include "f2k/exec/subprocess.hpp"

namespace f2k::exec {
namespace {

void check_name(std::string_view name) {
  const bool ok = !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  });
  if (!ok) throw PreconditionViolation("invalid job name '" + std::string(name) + "'");
}

std::string env_prelude(const TargetProfile& target) {
  std::string out;
  for (const auto& line : target.env_setup_commands) out += line + "\n";
  return out;
}

std::string time_directive(double minutes) {
  const long long total = std::max(60LL, static_cast<long long>(std::ceil(minutes * 60.0)));
  return fmt::format("{:02}:{:02}:{:02}", total / 3600, (total / 60) % 60, total % 60);
}

void append_note(const std::filesystem::path& path, std::string_view note) {
  std::string existing;
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) existing = text::read_file(path);
  if (!existing.empty() && existing.back() != '\n') existing += '\n';
  text::write_file(path, existing + std::string(note) + "\n");
}

std::string wallclock_note(const TargetProfile& target) {
  return fmt::format("job killed after reaching the wall-clock limit of {:g} minutes", target.wallclock_limit_minutes);
}

std::string first_token_upper(std::string_view s) {
  s = text::trim(s);
  std::size_t n = 0;
  while (n < s.size() && !std::isspace(static_cast<unsigned char>(s[n]))) ++n;
  std::string tok(s.substr(0, n));
  // squeue/sacct decorate states ("CANCELLED+", "CANCELLED by 42").
  while (!tok.empty() && !std::isalpha(static_cast<unsigned char>(tok.back()))) tok.pop_back();
  std::transform(tok.begin(), tok.end(), tok.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return tok;
}

bool contains(const std::vector<std::string>& list, std::string_view s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

ProcessResult scheduler_command(const std::string& cmd, const std::filesystem::path& cwd) {
  ProcessSpec spec;
  spec.cwd = cwd;
  spec.timeout = std::chrono::minutes(2);
  auto r = run_shell(cmd, spec);
  if (r.timed_out) throw SchedulerUnavailable("scheduler command timed out: " + cmd);
  return r;
}

}  // namespace

LocalBackend::LocalBackend(TargetProfile target) : target_(std::move(target)) {}

JobResult LocalBackend::execute(const JobRequest& job) {
  check_name(job.name);
  std::filesystem::create_directories(job.workdir);
  ProcessSpec spec;
  spec.cwd = job.workdir;
  spec.stdout_path = job.stdout_path;
  spec.stderr_path = job.stderr_path;
  spec.timeout = target_.wallclock_limit();
  const auto r = run_shell(env_prelude(target_) + job.command, spec);
  if (r.timed_out) {
    append_note(job.stderr_path, wallclock_note(target_));
    return {kWallclockExitStatus, r.elapsed_seconds};
  }
  return {r.exit_status, r.elapsed_seconds};
}

BatchBackend::BatchBackend(TargetProfile target) : target_(std::move(target)) {}

JobResult BatchBackend::execute(const JobRequest& job) {
  check_name(job.name);
  std::filesystem::create_directories(job.workdir);
  const auto script = script_path(job);
  text::write_file(script, generate_job_script(target_, job));
  std::filesystem::permissions(script, std::filesystem::perms::owner_exec, std::filesystem::perm_options::add);
  return submit_and_wait(script, job, target_);
}

std::unique_ptr<Backend> make_backend(const TargetProfile& target) {
  if (target.backend == BackendKind::batch) return std::make_unique<BatchBackend>(target);
  return std::make_unique<LocalBackend>(target);
}

std::filesystem::path script_path(const JobRequest& job) { return job.workdir / (job.name + ".job.sh"); }
std::filesystem::path exit_status_path(const JobRequest& job) { return job.workdir / (job.name + ".exit"); }

std::string generate_job_script(const TargetProfile& target, const JobRequest& job) {
  const auto& b = target.batch;
  const auto dir = [&](const std::string& d) { return b.directive_prefix + " " + d + "\n"; };
  std::string s = "#!/bin/bash\n";
  s += dir("--job-name=" + job.name);
  if (!b.partition.empty()) s += dir("--partition=" + b.partition);
  s += dir("--time=" + time_directive(target.wallclock_limit_minutes));
  s += dir("--output=" + (job.workdir / (job.name + ".sched.out")).string());
  s += dir("--error=" + (job.workdir / (job.name + ".sched.err")).string());
  for (const auto& d : b.extra_directives) s += dir(d);
  s += "\n";
  s += env_prelude(target);
  s += "cd " + shell_quote(job.workdir.string()) + "\n";
  s += "(\n" + job.command + "\n) > " + shell_quote(job.stdout_path.string()) + " 2> " +
       shell_quote(job.stderr_path.string()) + "\n";
  s += "status=$?\n";
  s += "echo \"$status\" > " + shell_quote(exit_status_path(job).string()) + "\n";
  s += "exit \"$status\"\n";
  return s;
}

JobResult submit_and_wait(const std::filesystem::path& script, const JobRequest& job, const TargetProfile& target) {
  const auto& b = target.batch;
  const auto start = std::chrono::steady_clock::now();
  const auto exit_file = exit_status_path(job);
  std::error_code ec;
  std::filesystem::remove(exit_file, ec);

  const auto submitted = scheduler_command(expand_command(b.submit_command, {{"script", script.string()}}), job.workdir);
  if (submitted.exit_status != 0)
    throw SchedulerUnavailable(fmt::format("submit failed (exit {}): {}", submitted.exit_status,
                                           text::trim(submitted.stderr_text)));
  // sbatch --parsable prints "<id>[;cluster]"; take the last non-empty line.
  std::string job_id;
  for (const auto& line : text::split_lines(submitted.stdout_text))
    if (!text::trim(line).empty()) job_id = std::string(text::trim(line));
  job_id = job_id.substr(0, job_id.find(';'));
  if (job_id.empty()) throw SchedulerUnavailable("submit command printed no job id");

  const auto deadline = start + target.wallclock_limit();
  std::string state;
  for (;;) {
    const auto polled = scheduler_command(expand_command(b.status_command, {{"job_id", job_id}}), job.workdir);
    if (polled.exit_status != 0)
      throw SchedulerUnavailable(fmt::format("status query for job {} failed (exit {}): {}", job_id, polled.exit_status,
                                             text::trim(polled.stderr_text)));
    state = first_token_upper(polled.stdout_text);
    if (contains(b.success_states, state) || contains(b.failure_states, state)) break;
    if (std::chrono::steady_clock::now() >= deadline) {
      if (!b.cancel_command.empty())
        scheduler_command(expand_command(b.cancel_command, {{"job_id", job_id}}), job.workdir);
      throw Timeout(fmt::format("job {} ({}) not finished after {:g} minutes", job_id, job.name,
                                target.wallclock_limit_minutes));
    }
    std::this_thread::sleep_for(std::min<std::chrono::steady_clock::duration>(
        b.poll_interval, std::max<std::chrono::steady_clock::duration>(deadline - std::chrono::steady_clock::now(),
                                                                       std::chrono::milliseconds(1))));
  }

  JobResult result;
  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (std::filesystem::exists(exit_file, ec)) {
    try {
      result.exit_status = std::stoi(std::string(text::trim(text::read_file(exit_file))));
      return result;
    } catch (const std::logic_error&) {
    }
  }
  // No exit record: the payload never finished.
  if (state == "TIMEOUT") {
    append_note(job.stderr_path, wallclock_note(target));
    result.exit_status = kWallclockExitStatus;
  } else {
    append_note(job.stderr_path, "job ended in scheduler state " + state + " without an exit status");
    result.exit_status = 1;
  }
  return result;
}

}  // namespace f2k::exec
