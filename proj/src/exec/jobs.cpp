#include "f2k/exec/jobs.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "f2k/errors.hpp"

namespace f2k::exec {
namespace {

bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Last "<digits>.<6 digits>" number in the line that is not part of a longer
// numeric token or a negative number.
std::optional<double> runtime_in_line(std::string_view line) {
  std::optional<double> found;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (!digit(line[i])) continue;
    if (i > 0 && (digit(line[i - 1]) || line[i - 1] == '.' || line[i - 1] == '-')) continue;
    std::size_t j = i;
    while (j < line.size() && digit(line[j])) ++j;
    if (j >= line.size() || line[j] != '.') {
      i = j;
      continue;
    }
    std::size_t k = j + 1;
    while (k < line.size() && digit(line[k])) ++k;
    const bool exponent = k < line.size() && (line[k] == 'e' || line[k] == 'E');
    const bool dotted = k < line.size() && line[k] == '.';
    if (k - j - 1 == 6 && !exponent && !dotted) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + k, v);
      if (ec == std::errc() && std::isfinite(v)) found = v;
    }
    i = k;
  }
  return found;
}

JobOutcome build_with(std::string_view tmpl, const std::filesystem::path& source, const std::filesystem::path& exe,
                      Backend& backend, const JobFiles& files) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(source, ec))
    throw PreconditionViolation("source file does not exist: " + source.string());
  std::filesystem::remove(exe, ec);
  if (exe.has_parent_path()) std::filesystem::create_directories(exe.parent_path());

  JobOutcome out;
  out.kind = JobKind::build;
  out.stdout_path = files.log_dir / (files.stem + ".log");
  out.stderr_path = files.log_dir / (files.stem + ".err");
  out.command = expand_command(tmpl, {{"source", std::filesystem::absolute(source).string()},
                                      {"exe", std::filesystem::absolute(exe).string()}});
  const auto r = backend.execute({files.stem, files.log_dir, out.command, out.stdout_path, out.stderr_path});
  out.exit_status = r.exit_status;
  out.elapsed_seconds = r.elapsed_seconds;
  if (out.exit_status == 0 && !std::filesystem::exists(exe, ec)) {
    text::write_file(out.stderr_path, text::read_file(out.stderr_path) +
                                          "compiler exited 0 but produced no executable at " + exe.string() + "\n");
    out.exit_status = 1;
  }
  return out;
}

}  // namespace

std::optional<double> parse_runtime(std::string_view stdout_text) {
  const auto lines = text::split_lines(stdout_text);
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    if (auto v = runtime_in_line(*it)) return v;
  }
  return std::nullopt;
}

JobOutcome build_program(const std::filesystem::path& source, const std::filesystem::path& exe,
                         const TargetProfile& target, Backend& backend, const JobFiles& files) {
  return build_with(target.compile_command_template, source, exe, backend, files);
}

JobOutcome compile_baseline(const std::filesystem::path& fortran_source, const std::filesystem::path& exe,
                            const TargetProfile& target, Backend& backend, const JobFiles& files) {
  return build_with(target.fortran_compile_command, fortran_source, exe, backend, files);
}

JobOutcome run_program(const std::filesystem::path& exe, std::int64_t n, std::int64_t reps, bool profile,
                       const TargetProfile& target, Backend& backend, const JobFiles& files) {
  if (n < 1 || reps < 1) throw PreconditionViolation(fmt::format("run_program: need n >= 1 and reps >= 1 (got {}, {})", n, reps));
  std::error_code ec;
  if (!std::filesystem::exists(exe, ec)) throw PreconditionViolation("executable does not exist: " + exe.string());

  JobOutcome out;
  out.kind = JobKind::run;
  out.stdout_path = files.log_dir / (files.stem + ".log");
  out.stderr_path = files.log_dir / (files.stem + ".err");
  text::Substitutions values{{"exe", std::filesystem::absolute(exe).string()},
                             {"n", std::to_string(n)},
                             {"reps", std::to_string(reps)}};
  const bool profiled = profile && target.profiler != ProfilerKind::none;
  if (profiled) {
    const auto report = std::filesystem::absolute(files.log_dir / (files.stem + "_profile" + std::string(target.report_extension())));
    std::filesystem::remove(report, ec);
    values["report"] = report.string();
    out.profiler_report_path = report;
    out.command = expand_command(target.profile_command_template, values);
  } else {
    out.command = expand_command(target.run_command_template, values);
  }
  const auto r = backend.execute({files.stem, files.log_dir, out.command, out.stdout_path, out.stderr_path});
  out.exit_status = r.exit_status;
  out.elapsed_seconds = r.elapsed_seconds;
  if (out.exit_status == 0) out.parsed_runtime = parse_runtime(text::read_file(out.stdout_path));
  return out;
}

}  // namespace f2k::exec
