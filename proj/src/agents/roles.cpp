#include "f2k/agents/roles.hpp"

#include <algorithm>
#include <utility>

#include "f2k/embedded.hpp"
#include "f2k/errors.hpp"

namespace f2k::agents {
namespace {

std::string embedded(std::string_view name) {
  if (auto text = embedded_file(name)) return std::string(*text);
  throw ConfigInvalid("no built-in prompt template '" + std::string(name) + "'");
}

std::vector<std::string> keys_for(Role role) {
  switch (role) {
    case Role::Translator: return {"kernel_name", "fortran_source"};
    case Role::Validator: return {"source"};
    case Role::ValidationFixer: return {"source", "issues"};
    case Role::ErrorSummarizer: return {"stage", "log"};
    case Role::CompileErrorFixer:
    case Role::RuntimeErrorFixer: return {"source", "diagnosis"};
    case Role::FunctionalityFixer: return {"source", "diagnosis", "fortran_source"};
    case Role::Optimizer: return {"source", "profiler_summary", "round"};
  }
  return {};
}

OutputKind kind_for(Role role) {
  switch (role) {
    case Role::Validator: return OutputKind::verdict;
    case Role::ErrorSummarizer: return OutputKind::plain_text;
    default: return OutputKind::source_code;
  }
}

void check_placeholders(const RoleSpec& spec) {
  for (const auto* tmpl : {&spec.system_prompt_template, &spec.user_prompt_template}) {
    for (const auto& key : text::placeholders(*tmpl)) {
      if (std::find(spec.required_context_keys.begin(), spec.required_context_keys.end(), key) ==
          spec.required_context_keys.end())
        throw ConfigInvalid("template for " + std::string(to_string(spec.role)) + " uses unknown placeholder {" +
                            key + "}");
    }
  }
}

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Translator: return "Translator";
    case Role::Validator: return "Validator";
    case Role::ValidationFixer: return "ValidationFixer";
    case Role::ErrorSummarizer: return "ErrorSummarizer";
    case Role::CompileErrorFixer: return "CompileErrorFixer";
    case Role::RuntimeErrorFixer: return "RuntimeErrorFixer";
    case Role::FunctionalityFixer: return "FunctionalityFixer";
    case Role::Optimizer: return "Optimizer";
  }
  return "?";
}

std::optional<Role> parse_role(std::string_view name) {
  for (Role r : kAllRoles)
    if (to_string(r) == name) return r;
  return std::nullopt;
}

std::string_view template_stem(Role role) {
  switch (role) {
    case Role::Translator: return "translator";
    case Role::Validator: return "validator";
    case Role::ValidationFixer: return "validation_fixer";
    case Role::ErrorSummarizer: return "error_summarizer";
    case Role::CompileErrorFixer: return "compile_error_fixer";
    case Role::RuntimeErrorFixer: return "runtime_error_fixer";
    case Role::FunctionalityFixer: return "functionality_fixer";
    case Role::Optimizer: return "optimizer";
  }
  return "";
}

RenderedPrompt render_prompt(const RoleSpec& role, const text::Substitutions& context) {
  for (const auto& key : role.required_context_keys) {
    if (!context.contains(key))
      throw MissingContextKey("role " + std::string(to_string(role.role)) + " needs context key '" + key + "'");
  }
  try {
    return {text::expand(role.system_prompt_template, context), text::expand(role.user_prompt_template, context)};
  } catch (const UnresolvedPlaceholder& e) {
    throw MissingContextKey(e.what());
  }
}

RoleCatalog RoleCatalog::builtin() {
  RoleCatalog c;
  for (Role r : kAllRoles) {
    const std::string stem(template_stem(r));
    RoleSpec spec{r, embedded(stem + "_system"), embedded(stem + "_user"), keys_for(r), kind_for(r)};
    check_placeholders(spec);
    c.specs_.emplace(r, std::move(spec));
  }
  return c;
}

RoleCatalog RoleCatalog::with_overrides(const std::filesystem::path& dir) {
  RoleCatalog c = builtin();
  for (auto& [role, spec] : c.specs_) {
    const std::string stem(template_stem(role));
    const auto sys = dir / (stem + "_system.txt");
    const auto usr = dir / (stem + "_user.txt");
    std::error_code ec;
    if (std::filesystem::exists(sys, ec)) spec.system_prompt_template = text::read_file(sys);
    if (std::filesystem::exists(usr, ec)) spec.user_prompt_template = text::read_file(usr);
    check_placeholders(spec);
  }
  return c;
}

const RoleSpec& RoleCatalog::spec(Role role) const { return specs_.at(role); }

}  // namespace f2k::agents
