#include "f2k/workflow/pipeline.hpp"

#include <chrono>

#include <fmt/format.h>

#include "f2k/errors.hpp"
#include "f2k/exec/subprocess.hpp"
#include "f2k/functest/equivalence.hpp"
#include "f2k/functest/injection.hpp"
#include "f2k/llm/transcript_store.hpp"
#include "f2k/perf/flops.hpp"
#include "f2k/perf/sweep.hpp"
#include "f2k/profiler/opt_report.hpp"
#include "f2k/text.hpp"
#include "f2k/workflow/trace.hpp"
#include "f2k/workflow/version_store.hpp"

namespace f2k::workflow {
namespace {

using agents::Role;
using Clock = std::chrono::steady_clock;

constexpr std::string_view kStatusNames[] = {"translated", "validated",     "built", "ran",
                                             "tested_ok",  "tested_failed", "aborted"};

constexpr std::size_t kLogTailLines = 200;

std::string tail_lines(std::string_view s, std::size_t n) {
  const auto lines = text::split_lines(s);
  if (lines.size() <= n) return std::string(s);
  std::vector<std::string> tail(lines.end() - static_cast<std::ptrdiff_t>(n), lines.end());
  return fmt::format("[{} earlier lines omitted]\n", lines.size() - n) + text::join(tail, "\n");
}

std::string read_if_exists(const std::filesystem::path& p) {
  std::error_code ec;
  return std::filesystem::exists(p, ec) ? text::read_file(p) : std::string();
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

// Pending agent calls not yet tied to a version directory.
struct PendingCall {
  llm::CompletionEvent event;
  std::string stage;
};

class Runner {
 public:
  Runner(const PipelineConfig& cfg, const PipelineInputs& inputs, PipelineServices& svc)
      : cfg_(cfg),
        in_(inputs),
        svc_(svc),
        workdir_(std::filesystem::absolute(cfg.workdir).lexically_normal()),
        store_(workdir_, cfg.effective_kernel_name()),
        trace_(workdir_ / kTraceName) {}

  PipelineResult run();

 private:
  // Stage plumbing
  void progress(const std::string& msg) {
    if (svc_.progress) svc_.progress(msg);
  }
  void on_completion(const llm::CompletionEvent& e);
  void flush_pending();
  void write_transcript(const PendingCall& call);
  void trace_job(const exec::JobOutcome& o, std::string_view stage);
  void save_version(const CodeVersion& v);
  [[noreturn]] void abort_version(CodeVersion& v, std::string stage);
  void run_cleanup(std::string_view when);

  void compile_reference();
  CodeVersion open_version(std::optional<int> parent);
  void write_source(CodeVersion& v, const std::string& source);
  std::string validate_loop(CodeVersion& v, std::string source);
  void process(CodeVersion& v, std::string source);
  bool build(CodeVersion& v, std::string& source);
  bool run_sizes(CodeVersion& v, std::string& source);
  bool test(CodeVersion& v, std::string& source);
  void profile(CodeVersion& v);
  void finish_version(CodeVersion& v, Clock::time_point started, std::size_t ledger_mark);
  void write_pipeline_json(const PipelineResult& r, bool completed);

  exec::JobFiles files(const CodeVersion& v, std::string stem) const { return {v.dir, std::move(stem)}; }
  std::filesystem::path exe_path(const CodeVersion& v) const { return v.dir / "program"; }

  const PipelineConfig& cfg_;
  const PipelineInputs& in_;
  PipelineServices& svc_;
  std::filesystem::path workdir_;
  VersionStore store_;
  TraceLog trace_;

  std::vector<std::uint64_t> sizes_;
  std::vector<std::int64_t> functionality_sizes_;
  std::filesystem::path reference_exe_;
  profiler::ProfileDiagnostics last_diagnostics_;

  std::string stage_ = "translate";
  std::optional<std::filesystem::path> current_dir_;
  int current_version_ = 0;
  int transcript_seq_ = 0;
  std::vector<PendingCall> pending_;
  PipelineResult result_;
};

void Runner::on_completion(const llm::CompletionEvent& e) {
  trace_.append({{"type", "agent"},
                 {"version", current_version_},
                 {"stage", stage_},
                 {"role", e.request.role},
                 {"model", e.model.name},
                 {"price_in_per_mtok", e.model.price_in_per_mtok},
                 {"price_out_per_mtok", e.model.price_out_per_mtok},
                 {"input_tokens", e.result.usage.input_tokens},
                 {"output_tokens", e.result.usage.output_tokens},
                 {"cost_usd", e.cost_usd},
                 {"latency_s", e.result.latency_seconds},
                 {"replay_key", e.replay_key}});
  pending_.push_back({e, stage_});
  flush_pending();
}

void Runner::flush_pending() {
  if (!current_dir_) return;
  for (const auto& call : pending_) write_transcript(call);
  pending_.clear();
}

void Runner::write_transcript(const PendingCall& call) {
  const auto& e = call.event;
  llm::Transcript t{e.request.role, e.request.system, e.request.user, e.result.text, e.result.usage};
  auto j = t.to_json();
  j["model"] = e.model.name;
  j["stage"] = call.stage;
  j["cost_usd"] = e.cost_usd;
  const auto dir = current_dir_ ? *current_dir_ / "transcripts" : workdir_ / "transcripts";
  text::write_file(dir / fmt::format("{:03}_{}.json", ++transcript_seq_, e.request.role), j.dump(2) + "\n");
}

void Runner::trace_job(const exec::JobOutcome& o, std::string_view stage) {
  nlohmann::json j{{"type", "job"},
                   {"version", current_version_},
                   {"stage", stage},
                   {"kind", o.kind == exec::JobKind::build ? "build" : "run"},
                   {"exit_status", o.exit_status},
                   {"elapsed_s", o.elapsed_seconds},
                   {"stdout", sanitize_log(o.stdout_path.string(), workdir_)}};
  if (o.parsed_runtime) j["runtime_s"] = *o.parsed_runtime;
  if (o.profiler_report_path) j["profiler_report"] = sanitize_log(o.profiler_report_path->string(), workdir_);
  trace_.append(j);
}

void Runner::save_version(const CodeVersion& v) {
  text::write_file(v.dir / kVersionJsonName, v.to_json().dump(2) + "\n");
}

void Runner::abort_version(CodeVersion& v, std::string stage) {
  v.status = VersionStatus::aborted;
  v.abort_stage = stage;
  save_version(v);
  result_.versions.push_back(v);
  result_.stop_reason = fmt::format("fix budget exhausted in stage '{}' of version v{}", stage, v.version);
  trace_.append({{"type", "abort"}, {"version", v.version}, {"stage", stage}});
  write_pipeline_json(result_, false);
  throw BudgetExhausted(std::move(stage), v.version);
}

void Runner::run_cleanup(std::string_view when) {
  for (const auto& cmd : cfg_.cleanup_commands) {
    exec::ProcessSpec spec;
    spec.cwd = workdir_;
    spec.timeout = std::chrono::minutes(5);
    const auto r = exec::run_shell(cmd, spec);
    trace_.append({{"type", "cleanup"}, {"when", when}, {"command", cmd}, {"exit_status", r.exit_status}});
  }
}

void Runner::compile_reference() {
  if (in_.baseline_source.empty()) throw PreconditionViolation("no Fortran reference program given");
  const auto dir = workdir_ / "baseline";
  std::filesystem::create_directories(dir);
  reference_exe_ = dir / "reference";
  const auto o = exec::compile_baseline(in_.baseline_source, reference_exe_, svc_.target, svc_.backend, {dir, "build"});
  trace_job(o, "baseline");
  if (o.exit_status != 0)
    throw ExecutorFailure(fmt::format("reference program failed to compile (exit {}); see {}", o.exit_status,
                                      o.stderr_path.string()));
}

CodeVersion Runner::open_version(std::optional<int> parent) {
  const auto h = store_.next_version();
  CodeVersion v;
  v.version = h.number;
  v.dir = h.dir;
  v.source_path = h.dir / "source.cpp";
  v.parent_version = parent;
  current_version_ = v.version;
  current_dir_ = v.dir;
  flush_pending();
  progress(fmt::format("v{}: started", v.version));
  return v;
}

void Runner::write_source(CodeVersion& v, const std::string& source) {
  text::write_file(v.source_path, with_newline(source));
}

std::string Runner::validate_loop(CodeVersion& v, std::string source) {
  stage_ = "validate";
  for (;;) {
    const auto verdict = svc_.agents.validate(source);
    trace_.append({{"type", "validation"}, {"version", v.version}, {"valid", verdict.is_valid}, {"issues", verdict.issues}});
    if (verdict.is_valid) break;
    if (v.validation_fixes >= cfg_.max_compile_fixes) {
      write_source(v, source);
      abort_version(v, "validation");
    }
    ++v.validation_fixes;
    std::string issues;
    for (const auto& i : verdict.issues) issues += "- " + i + "\n";
    try {
      source = svc_.agents.fix(Role::ValidationFixer, source, issues);
    } catch (const NoChangeProduced&) {
    }
  }
  v.status = VersionStatus::validated;
  write_source(v, source);
  return source;
}

bool Runner::build(CodeVersion& v, std::string& source) {
  stage_ = "build";
  ++v.build_attempts;
  write_source(v, source);
  const auto o = exec::build_program(v.source_path, exe_path(v), svc_.target, svc_.backend, files(v, "build"));
  trace_job(o, "build");
  if (o.succeeded()) {
    v.status = VersionStatus::built;
    return true;
  }
  if (v.compile_fixes >= cfg_.max_compile_fixes) abort_version(v, "compile");
  ++v.compile_fixes;
  progress(fmt::format("v{}: compile failed, fix {}/{}", v.version, v.compile_fixes, cfg_.max_compile_fixes));
  std::string log = read_if_exists(o.stderr_path);
  const auto out = read_if_exists(o.stdout_path);
  if (!text::trim(out).empty()) log += "\n" + out;
  if (text::trim(log).empty()) log = fmt::format("compiler exited with status {} and printed nothing", o.exit_status);
  stage_ = "compile_fix";
  const auto diagnosis = svc_.agents.summarize_error("compile", sanitize_log(tail_lines(log, kLogTailLines), workdir_));
  try {
    source = svc_.agents.fix(Role::CompileErrorFixer, source, diagnosis);
  } catch (const NoChangeProduced&) {
  }
  return false;
}

bool Runner::run_sizes(CodeVersion& v, std::string& source) {
  stage_ = "run";
  ++v.run_attempts;
  v.runtimes.clear();
  v.executions.clear();
  for (const auto n : sizes_) {
    const auto i_hat = perf::scaled_iterations(cfg_.program_iterations, n, cfg_.min_n, cfg_.max_n);
    double total = 0.0;
    for (std::uint64_t k = 1; k <= i_hat; ++k) {
      const auto stem = k == 1 ? fmt::format("run_{}", n) : fmt::format("run_{}_{}", n, k);
      const auto o = exec::run_program(exe_path(v), static_cast<std::int64_t>(n),
                                       static_cast<std::int64_t>(cfg_.kernel_repetitions), false, svc_.target,
                                       svc_.backend, files(v, stem));
      trace_job(o, "run");
      if (o.succeeded()) {
        total += *o.parsed_runtime;
        continue;
      }
      if (v.runtime_fixes >= cfg_.max_runtime_fixes) abort_version(v, "runtime");
      ++v.runtime_fixes;
      progress(fmt::format("v{}: run failed at n = {}, fix {}/{}", v.version, n, v.runtime_fixes, cfg_.max_runtime_fixes));
      std::string log = fmt::format("command: {} (n = {}, repetitions = {})\nexit status: {}\n",
                                    o.command, n, cfg_.kernel_repetitions, o.exit_status);
      if (o.exit_status == 0)
        log += "the program exited normally but printed no runtime with exactly six decimal places\n";
      log += "--- stderr ---\n" + tail_lines(read_if_exists(o.stderr_path), kLogTailLines) + "\n";
      log += "--- stdout ---\n" + tail_lines(read_if_exists(o.stdout_path), kLogTailLines / 4) + "\n";
      stage_ = "runtime_fix";
      const auto diagnosis = svc_.agents.summarize_error("runtime", sanitize_log(log, workdir_));
      try {
        source = svc_.agents.fix(Role::RuntimeErrorFixer, source, diagnosis);
      } catch (const NoChangeProduced&) {
      }
      return false;
    }
    v.runtimes[n] = total;
    v.executions[n] = i_hat;
  }
  v.status = VersionStatus::ran;
  return true;
}

bool Runner::test(CodeVersion& v, std::string& source) {
  stage_ = "functionality";
  ++v.functionality_attempts;
  const auto dir = v.dir / "functionality";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::filesystem::remove(v.dir / "functionality.json");

  auto spec = functest::default_injection_spec(cfg_.kernel_id, cfg_.capture_array);
  std::optional<std::string> diagnosis;
  functest::FunctionalityReport report;
  report.tolerance = cfg_.functionality_tolerance;
  report.rule = cfg_.effective_compare_rule();
  try {
    const auto instrumented = functest::inject_capture(source, spec);
    const auto instrumented_src = dir / "instrumented.cpp";
    text::write_file(instrumented_src, with_newline(instrumented));
    const auto o = exec::build_program(instrumented_src, dir / "instrumented", svc_.target, svc_.backend, {dir, "build"});
    trace_job(o, "functionality_build");
    if (!o.succeeded()) {
      diagnosis = "The program no longer compiles once the output-capture code is inserted after Kokkos::fence(); "
                  "the capture code copies the result View '" +
                  std::string(cfg_.capture_array.empty() ? functest::default_capture_array(cfg_.kernel_id)
                                                         : std::string_view(cfg_.capture_array)) +
                  "' to the host. Compiler output:\n" +
                  sanitize_log(tail_lines(read_if_exists(o.stderr_path), 40), workdir_);
    } else {
      report = functest::run_equivalence({dir / "instrumented", reference_exe_, functionality_sizes_,
                                          static_cast<std::int64_t>(cfg_.functionality_repetitions),
                                          spec.output_csv_name, cfg_.functionality_tolerance,
                                          cfg_.effective_compare_rule(), dir},
                                         svc_.target, svc_.backend);
      text::write_file(v.dir / "functionality.json", report.to_json().dump(2) + "\n");
      trace_.append({{"type", "functionality"}, {"version", v.version}, {"report", report.to_json()}});
      if (!report.pass) diagnosis = report.diagnosis();
    }
  } catch (const AnchorMissing& e) {
    diagnosis = std::string("Kokkos::fence() must be called inside main() exactly once, after all parallel work and "
                            "before the results are printed: ") + e.what();
  } catch (const AnchorAmbiguous& e) {
    diagnosis = std::string("Kokkos::fence() must be called inside main() exactly once: ") + e.what();
  }

  if (!diagnosis) {
    v.status = VersionStatus::tested_ok;
    return true;
  }
  v.status = VersionStatus::tested_failed;
  if (!std::filesystem::exists(v.dir / "functionality.json")) {
    report.pass = false;
    text::write_file(v.dir / "functionality.json",
                     nlohmann::json{{"verdict", "fail"}, {"detail", *diagnosis}}.dump(2) + "\n");
  }
  if (v.functionality_fixes >= cfg_.max_functionality_fixes) abort_version(v, "functionality");
  ++v.functionality_fixes;
  progress(fmt::format("v{}: functionality test failed, fix {}/{}", v.version, v.functionality_fixes,
                       cfg_.max_functionality_fixes));
  stage_ = "functionality_fix";
  try {
    source = svc_.agents.fix(Role::FunctionalityFixer, source, *diagnosis, in_.fortran_source);
  } catch (const NoChangeProduced&) {
  }
  return false;
}

void Runner::profile(CodeVersion& v) {
  stage_ = "profile";
  profiler::ProfileDiagnostics diag;
  diag.summary_text = std::string(profiler::kNoFindingsSummary);
  if (svc_.target.profiler != exec::ProfilerKind::none) {
    const auto o = exec::run_program(exe_path(v), static_cast<std::int64_t>(cfg_.max_n),
                                     static_cast<std::int64_t>(cfg_.kernel_repetitions), true, svc_.target,
                                     svc_.backend, files(v, "profile"));
    trace_job(o, "profile");
    diag = diagnose_profile(o, svc_.target.profiler, svc_.threshold_rules, cfg_.profile_summary_lines);
  }
  text::write_file(v.dir / "profile_summary.txt", with_newline(diag.summary_text));
  last_diagnostics_ = std::move(diag);
}

void Runner::process(CodeVersion& v, std::string source) {
  for (;;) {
    if (!build(v, source)) continue;
    if (!run_sizes(v, source)) continue;
    if (!test(v, source)) continue;
    break;
  }
  write_source(v, source);
  const auto t = v.runtimes.find(cfg_.max_n);
  if (perf::has_flop_model(cfg_.kernel_id) && t != v.runtimes.end() && t->second > 0)
    v.gflops_at_max_n =
        perf::gflops(cfg_.kernel_id, cfg_.max_n, v.executions.at(cfg_.max_n), cfg_.kernel_repetitions, t->second);
  profile(v);
}

void Runner::finish_version(CodeVersion& v, Clock::time_point started, std::size_t ledger_mark) {
  v.usage = svc_.gateway.ledger().usage_since(ledger_mark);
  v.cost_usd = svc_.gateway.ledger().cost_since(ledger_mark);
  v.elapsed_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  save_version(v);

  RunSummaryRow row;
  row.kernel = cfg_.effective_kernel_name();
  row.model = cfg_.model_ref;
  row.target = cfg_.target_id;
  row.version = v.version;
  for (const auto& [n, t] : v.runtimes) row.runtimes.emplace_back(n, t);
  row.build_fixes = v.compile_fixes;
  row.run_fixes = v.runtime_fixes;
  row.func_fixes = v.functionality_fixes;
  row.usage = v.usage;
  row.cost_usd = v.cost_usd;
  row.elapsed_seconds = v.elapsed_seconds;
  append_summary_row(row, workdir_ / kSummaryCsvName);

  progress(fmt::format("v{}: tested_ok ({} build, {} run, {} functionality invocations)", v.version,
                       v.build_attempts, v.run_attempts, v.functionality_attempts));
  result_.rows.push_back(std::move(row));
  result_.versions.push_back(v);
}

void Runner::write_pipeline_json(const PipelineResult& r, bool completed) {
  nlohmann::json versions = nlohmann::json::array();
  for (const auto& v : r.versions) versions.push_back(v.to_json());
  const auto usage = svc_.gateway.ledger().total();
  nlohmann::json j{{"kernel", cfg_.effective_kernel_name()},
                   {"kernel_id", std::string(to_string(cfg_.kernel_id))},
                   {"model", cfg_.model_ref},
                   {"target", cfg_.target_id},
                   {"completed", completed},
                   {"stop_reason", r.stop_reason},
                   {"sizes", sizes_},
                   {"max_n", cfg_.max_n},
                   {"kernel_repetitions", cfg_.kernel_repetitions},
                   {"input_tokens", usage.input_tokens},
                   {"output_tokens", usage.output_tokens},
                   {"cost_usd", svc_.gateway.ledger().total_cost()},
                   {"versions", std::move(versions)}};
  text::write_file(workdir_ / kPipelineJsonName, j.dump(2) + "\n");
}

PipelineResult Runner::run() {
  if (text::trim(in_.fortran_source).empty()) throw PreconditionViolation("empty Fortran source");
  cfg_.validate();
  svc_.target.validate();

  sizes_ = perf::sweep_sizes(cfg_.min_n, cfg_.max_n, cfg_.num_sizes, cfg_.size_spacing);
  for (const auto n : perf::sweep_sizes(cfg_.min_n, cfg_.max_n, cfg_.functionality_sizes, cfg_.size_spacing))
    functionality_sizes_.push_back(static_cast<std::int64_t>(n));

  svc_.gateway.set_listener([this](const llm::CompletionEvent& e) { on_completion(e); });
  struct ListenerReset {
    llm::Gateway& g;
    ~ListenerReset() { g.set_listener({}); }
  } reset{svc_.gateway};

  run_cleanup("before");
  struct CleanupAfter {
    Runner& r;
    ~CleanupAfter() {
      try {
        r.run_cleanup("after");
      } catch (...) {
      }
    }
  } cleanup_after{*this};

  compile_reference();

  // Baseline
  {
    const auto started = Clock::now();
    const auto mark = svc_.gateway.ledger().size();
    auto v = open_version(std::nullopt);
    stage_ = "translate";
    auto source = svc_.agents.translate(in_.fortran_source, cfg_.effective_kernel_name());
    v.status = VersionStatus::translated;
    write_source(v, source);
    source = validate_loop(v, std::move(source));
    process(v, source);
    finish_version(v, started, mark);
  }

  // Optimization rounds, each on the previous version.
  result_.stop_reason = "optimization rounds completed";
  for (int round = 1; round <= cfg_.max_optimization_rounds; ++round) {
    const auto& prev = result_.versions.back();
    const auto started = Clock::now();
    const auto mark = svc_.gateway.ledger().size();
    current_dir_.reset();
    current_version_ = prev.version + 1;
    stage_ = "optimize";
    std::string candidate;
    try {
      candidate = svc_.agents.optimize(text::read_file(prev.source_path), last_diagnostics_, round);
    } catch (const NoChangeProduced&) {
      result_.stop_reason = fmt::format("optimizer returned v{} unchanged in round {}", prev.version, round);
      trace_.append({{"type", "stop"}, {"reason", result_.stop_reason}});
      break;
    }
    auto v = open_version(prev.version);
    v.status = VersionStatus::translated;
    write_source(v, candidate);
    candidate = validate_loop(v, std::move(candidate));
    process(v, candidate);
    finish_version(v, started, mark);
  }

  flush_pending();
  result_.usage = svc_.gateway.ledger().total();
  result_.cost_usd = svc_.gateway.ledger().total_cost();
  write_pipeline_json(result_, true);
  return std::move(result_);
}

}  // namespace

std::string_view to_string(VersionStatus status) { return kStatusNames[static_cast<int>(status)]; }

VersionStatus parse_version_status(std::string_view name) {
  for (int i = 0; i < static_cast<int>(std::size(kStatusNames)); ++i)
    if (kStatusNames[i] == name) return static_cast<VersionStatus>(i);
  throw ParseError("unknown version status '" + std::string(name) + "'");
}

nlohmann::json CodeVersion::to_json() const {
  nlohmann::json runtimes_j = nlohmann::json::object();
  for (const auto& [n, t] : runtimes) runtimes_j[std::to_string(n)] = t;
  nlohmann::json exec_j = nlohmann::json::object();
  for (const auto& [n, k] : executions) exec_j[std::to_string(n)] = k;
  return {{"version", version},
          {"source", source_path.filename().string()},
          {"status", std::string(to_string(status))},
          {"parent_version", parent_version ? nlohmann::json(*parent_version) : nlohmann::json(nullptr)},
          {"build_attempts", build_attempts},
          {"run_attempts", run_attempts},
          {"functionality_attempts", functionality_attempts},
          {"validation_fixes", validation_fixes},
          {"compile_fixes", compile_fixes},
          {"runtime_fixes", runtime_fixes},
          {"functionality_fixes", functionality_fixes},
          {"runtimes", runtimes_j},
          {"executions", exec_j},
          {"gflops_at_max_n", gflops_at_max_n ? nlohmann::json(*gflops_at_max_n) : nlohmann::json(nullptr)},
          {"input_tokens", usage.input_tokens},
          {"output_tokens", usage.output_tokens},
          {"cost_usd", cost_usd},
          {"elapsed_s", elapsed_seconds},
          {"abort_stage", abort_stage ? nlohmann::json(*abort_stage) : nlohmann::json(nullptr)}};
}

CodeVersion CodeVersion::from_json(const nlohmann::json& j) {
  try {
    CodeVersion v;
    v.version = j.at("version").get<int>();
    v.source_path = j.value("source", "source.cpp");
    v.status = parse_version_status(j.at("status").get<std::string>());
    if (!j.at("parent_version").is_null()) v.parent_version = j.at("parent_version").get<int>();
    v.build_attempts = j.at("build_attempts").get<int>();
    v.run_attempts = j.at("run_attempts").get<int>();
    v.functionality_attempts = j.at("functionality_attempts").get<int>();
    v.validation_fixes = j.value("validation_fixes", 0);
    v.compile_fixes = j.at("compile_fixes").get<int>();
    v.runtime_fixes = j.at("runtime_fixes").get<int>();
    v.functionality_fixes = j.at("functionality_fixes").get<int>();
    for (const auto& [n, t] : j.at("runtimes").items()) v.runtimes[std::stoull(n)] = t.get<double>();
    const auto executions = j.value("executions", nlohmann::json::object());
    for (const auto& [n, k] : executions.items())
      v.executions[std::stoull(n)] = k.get<std::uint64_t>();
    if (!j.at("gflops_at_max_n").is_null()) v.gflops_at_max_n = j.at("gflops_at_max_n").get<double>();
    v.usage = {j.at("input_tokens").get<std::uint64_t>(), j.at("output_tokens").get<std::uint64_t>()};
    v.cost_usd = j.at("cost_usd").get<double>();
    v.elapsed_seconds = j.value("elapsed_s", 0.0);
    if (j.contains("abort_stage") && !j.at("abort_stage").is_null()) v.abort_stage = j.at("abort_stage").get<std::string>();
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("version record: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("version record: ") + e.what());
  }
}

std::string sanitize_log(std::string_view log, const std::filesystem::path& workdir) {
  const auto root = std::filesystem::absolute(workdir).lexically_normal().string();
  std::string out(log);
  if (root.empty() || root == "/") return out;
  std::string trimmed = root;
  while (trimmed.size() > 1 && trimmed.back() == '/') trimmed.pop_back();
  return text::replace_all(std::move(out), trimmed, "<workdir>");
}

profiler::ProfileDiagnostics diagnose_profile(const exec::JobOutcome& outcome, exec::ProfilerKind kind,
                                              const std::vector<profiler::MetricThresholdRule>& rules,
                                              std::size_t line_cap) {
  profiler::ProfileDiagnostics none;
  none.summary_text = std::string(profiler::kNoFindingsSummary);
  std::error_code ec;
  if (!outcome.profiler_report_path || !std::filesystem::exists(*outcome.profiler_report_path, ec)) return none;
  const auto report = text::read_file(*outcome.profiler_report_path);
  switch (kind) {
    case exec::ProfilerKind::ncu_like:
      return profiler::synthesize_summary(profiler::parse_opt_points(report), line_cap);
    case exec::ProfilerKind::rocprof_like:
      try {
        return profiler::synthesize_summary(profiler::evaluate_thresholds(profiler::parse_metric_dump(report), rules),
                                            line_cap);
      } catch (const ParseError&) {
        return none;
      }
    case exec::ProfilerKind::none:
      break;
  }
  return none;
}

PipelineResult run_pipeline(const PipelineConfig& cfg, const PipelineInputs& inputs, PipelineServices& services) {
  Runner runner(cfg, inputs, services);
  return runner.run();
}

}  // namespace f2k::workflow
