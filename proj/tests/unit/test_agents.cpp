#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <fmt/format.h>

#include "f2k/agents/agents.hpp"
#include "f2k/errors.hpp"
#include "f2k/text.hpp"
#include "generators.hpp"
#include "scripted_provider.hpp"
#include "temp_dir.hpp"
#include "toy.hpp"

using namespace f2k;
using f2k::testing::random_log;
using agents::Role;
using f2k::testing::ScriptedProvider;

namespace {

struct Rig {
  std::shared_ptr<ScriptedProvider> provider;
  llm::Gateway gateway;
  agents::Agents agents;

  explicit Rig(ScriptedProvider::Responder r)
      : provider(std::make_shared<ScriptedProvider>(std::move(r))),
        gateway(llm::LlmMode::live, provider, std::nullopt),
        agents(gateway, agents::RoleCatalog::builtin(), {f2k::testing::toy_model(), {}}) {}
};

// Random compiler/runtime-like stderr of 1..2000 lines.

}  // namespace

TEST_CASE("every built-in role renders with exactly its context keys", "[agents]") {
  const auto catalog = agents::RoleCatalog::builtin();
  for (auto role : agents::kAllRoles) {
    const auto& spec = catalog.spec(role);
    text::Substitutions ctx;
    for (const auto& k : spec.required_context_keys) ctx[k] = "<" + k + ">";
    const auto p = agents::render_prompt(spec, ctx);
    CHECK_FALSE(p.system.empty());
    CHECK_FALSE(p.user.empty());
    for (const auto& k : spec.required_context_keys) {
      INFO(agents::to_string(role) << " " << k);
      CHECK((p.system + p.user).find("<" + k + ">") != std::string::npos);
    }
    if (!spec.required_context_keys.empty()) {
      ctx.erase(spec.required_context_keys.front());
      CHECK_THROWS_AS(agents::render_prompt(spec, ctx), MissingContextKey);
    }
  }
}

TEST_CASE("role names round-trip", "[agents]") {
  for (auto role : agents::kAllRoles) CHECK(agents::parse_role(agents::to_string(role)) == role);
  CHECK_FALSE(agents::parse_role("Builder").has_value());
}

TEST_CASE("prompt overrides replace single files and are checked", "[agents]") {
  f2k::testing::TempDir dir;
  text::write_file(dir / "validator_user.txt", "Check this:\n{source}\n");
  auto c = agents::RoleCatalog::with_overrides(dir.path());
  CHECK(c.spec(Role::Validator).user_prompt_template == "Check this:\n{source}\n");
  CHECK(c.spec(Role::Validator).system_prompt_template == agents::RoleCatalog::builtin().spec(Role::Validator).system_prompt_template);
  text::write_file(dir / "validator_user.txt", "{source} {diagnosis}\n");
  CHECK_THROWS_AS(agents::RoleCatalog::with_overrides(dir.path()), ConfigInvalid);
}

TEST_CASE("structural check rejects prose, fences and unbalanced braces", "[agents]") {
  CHECK(agents::structural_check(f2k::testing::toy_source()).is_valid);
  CHECK(agents::structural_check("int main() {\n  // this comment is a full English sentence here.\n}\n").is_valid);
  CHECK(agents::structural_check("const char* s = \"a { brace\";\nint main() { return 0; }\n").is_valid);

  CHECK_FALSE(agents::structural_check("```cpp\nint main() {}\n```\n").is_valid);
  CHECK_FALSE(agents::structural_check("# Translated code\nint main() {}\n").is_valid);
  CHECK_FALSE(agents::structural_check("Here is the translated program for you.\nint main() {}\n").is_valid);
  CHECK_FALSE(agents::structural_check("int main() {\n").is_valid);
  CHECK_FALSE(agents::structural_check("int main() { return (1]; }\n").is_valid);
  CHECK_FALSE(agents::structural_check("   \n").is_valid);
}

TEST_CASE("validator replies parse into verdicts", "[agents]") {
  CHECK(agents::parse_validator_reply("VALID").is_valid);
  CHECK(agents::parse_validator_reply("  valid\n").is_valid);
  const auto v = agents::parse_validator_reply("INVALID\n- missing Kokkos::finalize\n- stray text\n");
  CHECK_FALSE(v.is_valid);
  CHECK(v.issues.size() == 2);
  CHECK_FALSE(agents::parse_validator_reply("I think it is fine").is_valid);
}

TEST_CASE("validate skips the model when the structural check fails", "[agents]") {
  Rig rig([](const llm::ChatRequest&, int) { return "VALID"; });
  CHECK_FALSE(rig.agents.validate("Sure! Here is your code.\n").is_valid);
  CHECK(rig.provider->total_calls() == 0);
  CHECK(rig.agents.validate(f2k::testing::toy_source()).is_valid);
  CHECK(rig.provider->calls("Validator") == 1);
}

TEST_CASE("translate returns the fenced code", "[agents]") {
  Rig rig(f2k::testing::toy_responder(f2k::testing::ToyFault::none));
  const auto out = rig.agents.translate("program p\nend program p\n", "toy");
  CHECK(out == text::trim(f2k::testing::toy_source()));
  CHECK_THROWS_AS(rig.agents.translate("  \n", "toy"), PreconditionViolation);
}

TEST_CASE("fixers detect unchanged output", "[agents]") {
  const auto src = std::string(text::trim(f2k::testing::toy_source()));
  Rig rig([&](const llm::ChatRequest&, int) { return f2k::testing::fenced(src); });
  CHECK_THROWS_AS(rig.agents.fix(Role::CompileErrorFixer, src, "error"), NoChangeProduced);
  CHECK_THROWS_AS(rig.agents.fix(Role::Translator, src, "error"), PreconditionViolation);
  CHECK_THROWS_AS(rig.agents.fix(Role::FunctionalityFixer, src, "mismatch"), PreconditionViolation);
  CHECK_THROWS_AS(rig.agents.fix(Role::RuntimeErrorFixer, src, ""), PreconditionViolation);
}

TEST_CASE("optimizer sees an explicit note when the profiler found nothing", "[agents]") {
  std::string seen;
  Rig rig([&](const llm::ChatRequest& r, int) {
    seen = r.user;
    return f2k::testing::fenced("int main() { return 1; }\n");
  });
  profiler::ProfileDiagnostics none;
  rig.agents.optimize("int main() { return 0; }", none, 1);
  CHECK(seen.find(agents::kEmptyFeedbackSummary) != std::string::npos);
}

TEST_CASE("cap_log keeps head and tail within budget", "[agents]") {
  const std::string log(100000, 'x');
  const auto capped = agents::cap_log("HEAD" + log + "TAIL", 1000);
  CHECK(capped.starts_with("HEAD"));
  CHECK(capped.ends_with("TAIL"));
  CHECK(capped.size() < 1100);
  CHECK(agents::cap_log("short", 1000) == "short");
}

TEST_CASE("error summaries never exceed 20 lines", "[agents][property]") {
  std::mt19937 rng(7);
  // The scripted summarizer misbehaves on purpose: it echoes a random number
  // of log lines, often far more than allowed.
  Rig rig([&](const llm::ChatRequest& r, int i) {
    const auto lines = text::split_lines(r.user);
    const std::size_t keep = (static_cast<std::size_t>(i) * 37) % (lines.size() + 1) + 1;
    return text::join(std::vector<std::string>(lines.begin(), lines.begin() + std::min(keep, lines.size())), "\n");
  });
  for (int i = 0; i < 50; ++i) {
    const auto log = random_log(rng);
    const auto summary = rig.agents.summarize_error(i % 2 ? "compile" : "runtime", log);
    INFO("case " << i << " log lines " << text::count_lines(log));
    CHECK(text::count_lines(summary) <= 20);
    CHECK_FALSE(text::trim(summary).empty());
  }
  CHECK_THROWS_AS(rig.agents.summarize_error("compile", ""), PreconditionViolation);
}
