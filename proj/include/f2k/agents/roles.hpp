#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "f2k/text.hpp"

namespace f2k::agents {

enum class Role {
  Translator,
  Validator,
  ValidationFixer,
  ErrorSummarizer,
  CompileErrorFixer,
  RuntimeErrorFixer,
  FunctionalityFixer,
  Optimizer,
};

inline constexpr std::array kAllRoles = {
    Role::Translator,        Role::Validator,         Role::ValidationFixer,    Role::ErrorSummarizer,
    Role::CompileErrorFixer, Role::RuntimeErrorFixer, Role::FunctionalityFixer, Role::Optimizer,
};

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view name);

/// File stem of the role's templates: `<stem>_system.txt`, `<stem>_user.txt`.
std::string_view template_stem(Role role);

enum class OutputKind { source_code, verdict, plain_text };

struct RoleSpec {
  Role role;
  std::string system_prompt_template;
  std::string user_prompt_template;
  std::vector<std::string> required_context_keys;
  OutputKind output_kind;
};

struct RenderedPrompt {
  std::string system;
  std::string user;
};

/// Pure substitution of `context` into both templates. Throws
/// MissingContextKey when a required key is absent.
RenderedPrompt render_prompt(const RoleSpec& role, const text::Substitutions& context);

/// The eight role specs, from the shipped templates or an override directory.
class RoleCatalog {
 public:
  /// Templates compiled into the library.
  static RoleCatalog builtin();
  /// Built-in templates, replaced file-by-file by any `<stem>_{system,user}.txt`
  /// found in `dir`. Throws ConfigInvalid when a template uses a placeholder
  /// outside the role's context keys.
  static RoleCatalog with_overrides(const std::filesystem::path& dir);

  const RoleSpec& spec(Role role) const;

 private:
  std::map<Role, RoleSpec> specs_;
};

}  // namespace f2k::agents
