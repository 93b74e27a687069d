#include "toy.hpp"

#include <fmt/format.h>

#include "f2k/text.hpp"

#ifndef F2K_TEST_FIXTURES_DIR
#error "F2K_TEST_FIXTURES_DIR must be defined"
#endif

namespace f2k::testing {

std::filesystem::path fixtures_dir() { return F2K_TEST_FIXTURES_DIR; }

std::string toy_source() { return text::read_file(fixtures_dir() / "toy" / "dgemm_kokkos.cpp"); }

std::string with_fault(std::string source, ToyFault fault) {
  switch (fault) {
    case ToyFault::none:
      return source;
    case ToyFault::compile:
      return text::replace_all(source, "#include <cstdlib>\n", "#include <cstdlib>\n#error toy fault: undeclared View\n");
    case ToyFault::runtime:
      return text::replace_all(source, "  Kokkos::initialize(argc, argv);\n",
                               "  Kokkos::initialize(argc, argv);\n  std::abort();\n");
    case ToyFault::functionality:
      return text::replace_all(source, "alpha = 1.0", "alpha = 2.0");
  }
  return source;
}

std::string fenced(const std::string& source) {
  const bool newline = !source.empty() && source.back() == '\n';
  return "Here is the translation.\n\n```cpp\n" + source + (newline ? "" : "\n") + "```\n";
}

ScriptedProvider::Responder toy_responder(ToyFault fault) {
  return [fault](const llm::ChatRequest& req, int index) -> std::string {
    const auto& role = req.role;
    if (role == "Translator") return fenced(with_fault(toy_source(), fault));
    if (role == "Validator") return "VALID";
    if (role == "ErrorSummarizer")
      return "1. The failing step is reported in the log above.\n2. Fix the offending statement.\n";
    if (role == "Optimizer") {
      std::string src = toy_source();
      for (int k = 1; k <= index + 1; ++k) src += fmt::format("// optimization round {}: hoist loop bounds\n", k);
      return fenced(src);
    }
    // Fixers
    auto src = with_fault(toy_source(), fault);
    src += fmt::format("// {} attempt {}\n", role, index + 1);
    return fenced(src);
  };
}

exec::TargetProfile stub_target() {
  exec::TargetProfile t;
  t.target_id = "stub";
  t.backend = exec::BackendKind::local;
  const auto cc = (fixtures_dir() / "stub_toolchain" / "stub_cc.sh").string();
  t.compile_command_template = cc + " {source} {exe}";
  t.run_command_template = "{exe} {n} {reps}";
  t.fortran_compile_command = cc + " --reference {source} {exe}";
  t.wallclock_limit_minutes = 2;
  return t;
}

exec::TargetProfile gxx_target() {
  exec::TargetProfile t;
  t.target_id = "host-gxx";
  t.backend = exec::BackendKind::local;
  t.compile_command_template =
      "g++ -O1 -std=c++17 -I" + (fixtures_dir() / "kokkos_shim").string() + " {source} -o {exe}";
  t.run_command_template = "{exe} {n} {reps}";
  t.fortran_compile_command = "g++ -O1 -std=c++17 {source} -o {exe}";
  t.wallclock_limit_minutes = 5;
  return t;
}

workflow::PipelineConfig toy_config(const std::filesystem::path& workdir) {
  auto c = workflow::PipelineConfig::defaults_for(KernelId::DGEMM, "MI250");
  c.kernel_name = "toy_dgemm";
  c.target_id = "stub";
  c.model_ref = "scripted";
  c.min_n = 4;
  c.max_n = 16;
  c.num_sizes = 3;
  c.program_iterations = {perf::IterationPolicyKind::fixed_at_min_then_two, 2, 3};
  c.kernel_repetitions = 2;
  c.functionality_sizes = 2;
  c.workdir = workdir;
  return c;
}

llm::ModelRef toy_model() {
  llm::ModelRef m;
  m.name = "scripted";
  m.endpoint = "http://127.0.0.1:9";
  m.price_in_per_mtok = 1.25;
  m.price_out_per_mtok = 10.0;
  return m;
}

workflow::PipelineInputs toy_inputs(const exec::TargetProfile& target) {
  workflow::PipelineInputs in;
  in.fortran_source = text::read_file(fixtures_dir() / "toy" / "dgemm.f90");
  in.baseline_source = target.target_id == "stub" ? fixtures_dir() / "toy" / "dgemm.f90"
                                                  : fixtures_dir() / "toy" / "dgemm_reference.cpp";
  return in;
}

nlohmann::json toy_run_config(const std::filesystem::path& workdir, const std::filesystem::path& transcripts) {
  const auto t = stub_target();
  const auto c = toy_config(workdir);
  const auto m = toy_model();
  return {
      {"pipeline",
       {{"kernel", "DGEMM"},
        {"kernel_name", c.kernel_name},
        {"target", t.target_id},
        {"model", m.name},
        {"min_n", c.min_n},
        {"max_n", c.max_n},
        {"num_sizes", c.num_sizes},
        {"iterations", {{"policy", "fixed_at_min_then_two"}, {"min", 2}, {"max", 3}}},
        {"kernel_repetitions", c.kernel_repetitions},
        {"workdir", workdir.string()},
        {"fortran_source", (fixtures_dir() / "toy" / "dgemm.f90").string()},
        {"functionality", {{"sizes", c.functionality_sizes}}}}},
      {"models",
       {{m.name,
         {{"endpoint", m.endpoint}, {"price_in_per_mtok", m.price_in_per_mtok}, {"price_out_per_mtok", m.price_out_per_mtok}}}}},
      {"targets",
       {{t.target_id,
         {{"backend", "local"},
          {"compile", t.compile_command_template},
          {"run", t.run_command_template},
          {"fortran_compile", t.fortran_compile_command},
          {"wallclock_minutes", t.wallclock_limit_minutes}}}}},
      {"llm", {{"mode", "replay"}, {"transcripts", transcripts.string()}}},
  };
}

ToyRig::ToyRig(ToyFault fault, exec::TargetProfile t, llm::LlmMode mode, const std::filesystem::path& store)
    : provider(std::make_shared<ScriptedProvider>(toy_responder(fault))), target(std::move(t)) {
  std::optional<llm::TranscriptStore> transcripts;
  if (!store.empty()) transcripts.emplace(store);
  gateway = std::make_unique<llm::Gateway>(mode, mode == llm::LlmMode::replay ? nullptr : provider,
                                           std::move(transcripts));
  agents = std::make_unique<agents::Agents>(*gateway, agents::RoleCatalog::builtin(),
                                            agents::RoleModels{toy_model(), {}});
  backend = exec::make_backend(target);
}

workflow::PipelineResult ToyRig::run(const workflow::PipelineConfig& cfg) {
  workflow::PipelineServices services{*agents, *gateway, *backend, target, {}, {}};
  return workflow::run_pipeline(cfg, toy_inputs(target), services);
}

}  // namespace f2k::testing
