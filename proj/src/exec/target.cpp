#include "f2k/exec/target.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "f2k/errors.hpp"
#include "f2k/exec/subprocess.hpp"

namespace f2k::exec {
namespace {

void check_template(std::string_view what, std::string_view tmpl, std::initializer_list<std::string_view> required,
                    std::initializer_list<std::string_view> allowed) {
  if (text::trim(tmpl).empty()) throw ConfigInvalid(std::string(what) + " is empty");
  const auto present = text::placeholders(tmpl);
  for (auto key : required) {
    if (std::find(present.begin(), present.end(), key) == present.end())
      throw ConfigInvalid(std::string(what) + " lacks the {" + std::string(key) + "} placeholder");
  }
  for (const auto& key : present) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigInvalid(std::string(what) + " uses unknown placeholder {" + key + "}");
  }
}

}  // namespace

std::string_view to_string(BackendKind kind) { return kind == BackendKind::local ? "local" : "batch"; }

std::string_view to_string(ProfilerKind kind) {
  switch (kind) {
    case ProfilerKind::none: return "none";
    case ProfilerKind::ncu_like: return "ncu_like";
    case ProfilerKind::rocprof_like: return "rocprof_like";
  }
  return "none";
}

BackendKind parse_backend_kind(std::string_view name) {
  if (name == "local") return BackendKind::local;
  if (name == "batch") return BackendKind::batch;
  throw ConfigInvalid("unknown backend '" + std::string(name) + "' (expected local or batch)");
}

ProfilerKind parse_profiler_kind(std::string_view name) {
  if (name == "none") return ProfilerKind::none;
  if (name == "ncu_like") return ProfilerKind::ncu_like;
  if (name == "rocprof_like") return ProfilerKind::rocprof_like;
  throw ConfigInvalid("unknown profiler '" + std::string(name) + "' (expected none, ncu_like or rocprof_like)");
}

void TargetProfile::validate() const {
  if (target_id.empty()) throw ConfigInvalid("target_id is empty");
  check_template("compile_command_template", compile_command_template, {"source", "exe"}, {"source", "exe"});
  check_template("run_command_template", run_command_template, {"exe", "n", "reps"}, {"exe", "n", "reps"});
  check_template("fortran_compile_command", fortran_compile_command, {"source", "exe"}, {"source", "exe"});
  if (profiler != ProfilerKind::none)
    check_template("profile_command_template", profile_command_template, {"exe", "n", "reps", "report"},
                   {"exe", "n", "reps", "report"});
  if (!std::isfinite(wallclock_limit_minutes) || wallclock_limit_minutes <= 0)
    throw ConfigInvalid("wallclock_limit must be a positive number of minutes");
  if (backend == BackendKind::batch) {
    check_template("batch.submit_command", batch.submit_command, {"script"}, {"script"});
    check_template("batch.status_command", batch.status_command, {"job_id"}, {"job_id"});
    if (!batch.cancel_command.empty())
      check_template("batch.cancel_command", batch.cancel_command, {"job_id"}, {"job_id"});
    if (batch.poll_interval.count() <= 0) throw ConfigInvalid("batch.poll_interval must be positive");
  }
}

std::chrono::milliseconds TargetProfile::wallclock_limit() const {
  return std::chrono::milliseconds(static_cast<long long>(std::llround(wallclock_limit_minutes * 60'000.0)));
}

std::string_view TargetProfile::report_extension() const {
  switch (profiler) {
    case ProfilerKind::ncu_like: return ".txt";
    case ProfilerKind::rocprof_like: return ".csv";
    case ProfilerKind::none: return "";
  }
  return "";
}

std::string expand_command(std::string_view tmpl, const text::Substitutions& values) {
  text::Substitutions quoted;
  for (const auto& [k, v] : values) quoted.emplace(k, shell_quote(v));
  return text::expand(tmpl, quoted);
}

}  // namespace f2k::exec
