#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "f2k/agents/agents.hpp"
#include "f2k/exec/backend.hpp"
#include "f2k/exec/jobs.hpp"
#include "f2k/exec/target.hpp"
#include "f2k/llm/gateway.hpp"
#include "f2k/profiler/summary.hpp"
#include "f2k/profiler/thresholds.hpp"
#include "f2k/workflow/config.hpp"
#include "f2k/workflow/summary_csv.hpp"

namespace f2k::workflow {

enum class VersionStatus { translated, validated, built, ran, tested_ok, tested_failed, aborted };

std::string_view to_string(VersionStatus status);
VersionStatus parse_version_status(std::string_view name);  // throws ParseError

/// One numbered source artifact and what happened to it.
struct CodeVersion {
  int version = 0;
  std::filesystem::path dir;
  std::filesystem::path source_path;
  VersionStatus status = VersionStatus::translated;
  std::optional<int> parent_version;  // version - 1 for every version after the first

  // Stage invocations (Build / Run / Functionality Tester).
  int build_attempts = 0;
  int run_attempts = 0;
  int functionality_attempts = 0;
  // Fixer invocations, each bounded by its budget.
  int validation_fixes = 0;
  int compile_fixes = 0;
  int runtime_fixes = 0;
  int functionality_fixes = 0;

  std::map<std::uint64_t, double> runtimes;  // n -> seconds summed over the executions at n
  std::map<std::uint64_t, std::uint64_t> executions;  // n -> program executions (i_hat)
  std::optional<double> gflops_at_max_n;
  llm::TokenUsage usage;
  double cost_usd = 0.0;
  double elapsed_seconds = 0.0;
  std::optional<std::string> abort_stage;

  nlohmann::json to_json() const;
  static CodeVersion from_json(const nlohmann::json& j);  // throws ParseError
};

struct PipelineInputs {
  std::string fortran_source;  // text given to the Translator
  std::filesystem::path baseline_source;  // Fortran driver program used as the functional reference
};

/// What the pipeline runs against. `agents` must call through `gateway`.
struct PipelineServices {
  agents::Agents& agents;
  llm::Gateway& gateway;
  exec::Backend& backend;
  exec::TargetProfile target;
  std::vector<profiler::MetricThresholdRule> threshold_rules;
  std::function<void(std::string_view)> progress;  // optional one-line status messages
};

struct PipelineResult {
  std::vector<CodeVersion> versions;
  std::vector<RunSummaryRow> rows;
  std::string stop_reason;  // why optimization ended
  llm::TokenUsage usage;
  double cost_usd = 0.0;
};

/// Translate, validate, build, run, test and then optimize for up to
/// max_optimization_rounds more versions, each built on the previous one.
///
/// Workdir layout: `<kernel>.v<K>/` per version, `baseline/`, `summary.csv`,
/// `trace.jsonl`, `pipeline.json`. Throws BudgetExhausted (after recording the
/// aborted version), ProviderUnavailable or ExecutorFailure.
PipelineResult run_pipeline(const PipelineConfig& cfg, const PipelineInputs& inputs, PipelineServices& services);

/// Replaces the workdir's absolute path with `<workdir>`.
std::string sanitize_log(std::string_view log, const std::filesystem::path& workdir);

/// Turns a profiled run's report into diagnostics. A missing or unreadable
/// report gives empty diagnostics.
profiler::ProfileDiagnostics diagnose_profile(const exec::JobOutcome& outcome, exec::ProfilerKind kind,
                                              const std::vector<profiler::MetricThresholdRule>& rules,
                                              std::size_t line_cap);

inline constexpr std::string_view kSummaryCsvName = "summary.csv";
inline constexpr std::string_view kTraceName = "trace.jsonl";
inline constexpr std::string_view kPipelineJsonName = "pipeline.json";
inline constexpr std::string_view kVersionJsonName = "version.json";

}  // namespace f2k::workflow
