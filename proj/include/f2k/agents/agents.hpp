#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "f2k/agents/roles.hpp"
#include "f2k/agents/structural_check.hpp"
#include "f2k/llm/gateway.hpp"
#include "f2k/profiler/summary.hpp"

namespace f2k::agents {

/// Model used by each role: `default_model` unless overridden.
struct RoleModels {
  llm::ModelRef default_model;
  std::map<Role, llm::ModelRef> overrides;

  const llm::ModelRef& for_role(Role role) const;
};

struct AgentLimits {
  std::size_t summary_max_lines = 20;
  /// Logs longer than this are cut to head and tail before summarization.
  std::size_t log_char_budget = 24000;
};

inline constexpr std::string_view kEmptyFeedbackSummary = "no profiler findings; improve general efficiency";

/// The LLM-backed roles. Stateless apart from the gateway it calls through.
class Agents {
 public:
  Agents(llm::Gateway& gateway, RoleCatalog catalog, RoleModels models, AgentLimits limits = {});

  /// Throws PreconditionViolation for an empty source.
  std::string translate(std::string_view fortran_source, std::string_view kernel_name);

  /// Structural check first; the Validator model is asked only when it passes.
  ValidationVerdict validate(std::string_view source);

  /// Diagnosis of a failed build or run, at most `summary_max_lines` lines.
  /// `stage` is "compile" or "runtime". Throws PreconditionViolation for an empty log.
  std::string summarize_error(std::string_view stage, std::string_view log);

  /// One of the four fixer roles. For ValidationFixer `diagnosis` is the issue
  /// list; FunctionalityFixer also needs `fortran_source`. Throws
  /// NoChangeProduced when the model returns the input unchanged.
  std::string fix(Role role, std::string_view source, std::string_view diagnosis,
                  std::string_view fortran_source = {});

  /// Throws NoChangeProduced when the model returns the input unchanged.
  std::string optimize(std::string_view source, const profiler::ProfileDiagnostics& feedback, int round);

  const RoleCatalog& catalog() const { return catalog_; }
  const RoleModels& models() const { return models_; }

 private:
  std::string call(Role role, const text::Substitutions& context);
  std::string source_output(Role role, std::string_view input, const text::Substitutions& context);

  llm::Gateway& gateway_;
  RoleCatalog catalog_;
  RoleModels models_;
  AgentLimits limits_;
};

/// Parses "VALID" or "INVALID" followed by one issue per line.
ValidationVerdict parse_validator_reply(std::string_view reply);

/// Keeps the first and last `budget / 2` characters with an omission marker between.
std::string cap_log(std::string_view log, std::size_t budget);

}  // namespace f2k::agents
