#include "f2k/agents/agents.hpp"

#include <fmt/format.h>

#include "f2k/errors.hpp"
#include "f2k/llm/code_block.hpp"

namespace f2k::agents {
namespace {

bool is_fixer(Role role) {
  return role == Role::ValidationFixer || role == Role::CompileErrorFixer || role == Role::RuntimeErrorFixer ||
         role == Role::FunctionalityFixer;
}

std::string_view strip_decoration(std::string_view line) {
  line = text::trim(line);
  while (!line.empty() && (line.front() == '*' || line.front() == '-' || line.front() == '#' || line.front() == '`'))
    line = text::trim_left(line.substr(1));
  while (!line.empty() && (line.back() == '*' || line.back() == '`' || line.back() == '.' || line.back() == ':'))
    line = text::trim_right(line.substr(0, line.size() - 1));
  return line;
}

}  // namespace

const llm::ModelRef& RoleModels::for_role(Role role) const {
  auto it = overrides.find(role);
  return it == overrides.end() ? default_model : it->second;
}

ValidationVerdict parse_validator_reply(std::string_view reply) {
  const auto lines = text::split_lines(text::trim(reply));
  if (lines.empty()) return {false, {"validator returned an empty verdict"}};
  const auto head = text::to_lower(strip_decoration(lines.front()));
  if (head.starts_with("invalid")) {
    ValidationVerdict v{false, {}};
    auto rest = text::trim(strip_decoration(lines.front()).substr(7));
    if (!rest.empty()) v.issues.emplace_back(rest);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto issue = strip_decoration(lines[i]);
      if (!issue.empty()) v.issues.emplace_back(issue);
    }
    if (v.issues.empty()) v.issues.emplace_back("validator rejected the source without naming an issue");
    return v;
  }
  if (head.starts_with("valid")) return {true, {}};
  return {false, {fmt::format("unrecognized validator verdict: {}", text::trim(lines.front()))}};
}

std::string cap_log(std::string_view log, std::size_t budget) {
  if (log.size() <= budget) return std::string(log);
  const std::size_t half = budget / 2;
  return fmt::format("{}\n... [{} characters omitted] ...\n{}", log.substr(0, half), log.size() - 2 * half,
                     log.substr(log.size() - half));
}

Agents::Agents(llm::Gateway& gateway, RoleCatalog catalog, RoleModels models, AgentLimits limits)
    : gateway_(gateway), catalog_(std::move(catalog)), models_(std::move(models)), limits_(limits) {}

std::string Agents::call(Role role, const text::Substitutions& context) {
  const auto prompt = render_prompt(catalog_.spec(role), context);
  return gateway_.complete(models_.for_role(role), to_string(role), prompt.system, prompt.user).text;
}

std::string Agents::source_output(Role role, std::string_view input, const text::Substitutions& context) {
  auto code = llm::extract_code_block(call(role, context));
  if (text::trim(code) == text::trim(input))
    throw NoChangeProduced(fmt::format("{} returned the source unchanged", to_string(role)));
  return code;
}

std::string Agents::translate(std::string_view fortran_source, std::string_view kernel_name) {
  if (text::trim(fortran_source).empty()) throw PreconditionViolation("translate: empty Fortran source");
  return llm::extract_code_block(
      call(Role::Translator, {{"kernel_name", std::string(kernel_name)}, {"fortran_source", std::string(fortran_source)}}));
}

ValidationVerdict Agents::validate(std::string_view source) {
  auto verdict = structural_check(source);
  if (!verdict.is_valid) return verdict;
  return parse_validator_reply(call(Role::Validator, {{"source", std::string(source)}}));
}

std::string Agents::summarize_error(std::string_view stage, std::string_view log) {
  if (text::trim(log).empty()) throw PreconditionViolation("summarize_error: empty log");
  const auto reply = call(Role::ErrorSummarizer,
                          {{"stage", std::string(stage)}, {"log", cap_log(log, limits_.log_char_budget)}});
  return text::clamp_lines(text::trim(reply), limits_.summary_max_lines);
}

std::string Agents::fix(Role role, std::string_view source, std::string_view diagnosis, std::string_view fortran_source) {
  if (!is_fixer(role)) throw PreconditionViolation(fmt::format("fix: {} is not a fixer role", to_string(role)));
  if (text::trim(source).empty() || text::trim(diagnosis).empty())
    throw PreconditionViolation("fix: source and diagnosis must be non-empty");
  text::Substitutions ctx{{"source", std::string(source)}};
  if (role == Role::ValidationFixer) {
    ctx["issues"] = std::string(diagnosis);
  } else {
    ctx["diagnosis"] = std::string(diagnosis);
  }
  if (role == Role::FunctionalityFixer) {
    if (text::trim(fortran_source).empty())
      throw PreconditionViolation("fix: FunctionalityFixer needs the Fortran source");
    ctx["fortran_source"] = std::string(fortran_source);
  }
  return source_output(role, source, ctx);
}

std::string Agents::optimize(std::string_view source, const profiler::ProfileDiagnostics& feedback, int round) {
  if (text::trim(source).empty()) throw PreconditionViolation("optimize: empty source");
  const std::string summary = feedback.findings.empty() ? std::string(kEmptyFeedbackSummary) : feedback.summary_text;
  return source_output(Role::Optimizer, source,
                       {{"source", std::string(source)}, {"profiler_summary", summary}, {"round", std::to_string(round)}});
}

}  // namespace f2k::agents
