#pragma once

// Toy DGEMM kernel, its fault variants, a scripted model that "translates" it,
// and a local target whose compiler is the stub toolchain script.

#include <filesystem>
#include <memory>
#include <string>

#include "f2k/agents/agents.hpp"
#include "f2k/exec/backend.hpp"
#include "f2k/exec/target.hpp"
#include "f2k/llm/gateway.hpp"
#include "f2k/workflow/config.hpp"
#include "f2k/workflow/pipeline.hpp"
#include <nlohmann/json.hpp>

#include "scripted_provider.hpp"

namespace f2k::testing {

std::filesystem::path fixtures_dir();

enum class ToyFault { none, compile, runtime, functionality };

/// The clean Kokkos translation of toy/dgemm.f90.
std::string toy_source();
/// `source` with the given fault planted (persistently detectable).
std::string with_fault(std::string source, ToyFault fault);
std::string fenced(const std::string& source);

/// Translator returns the toy source with `fault`; every fixer returns a new
/// variant that still carries the fault (or the clean source when `fault` is
/// none); the Optimizer appends one "optimization round" comment per round.
ScriptedProvider::Responder toy_responder(ToyFault fault);

/// Local target compiling through stub_toolchain/stub_cc.sh.
exec::TargetProfile stub_target();
/// Local target compiling with the host g++ against the Kokkos shim; the
/// reference program is toy/dgemm_reference.cpp built by g++ as well.
exec::TargetProfile gxx_target();

/// DGEMM settings scaled down to sizes 4..16 so stub runs take milliseconds.
workflow::PipelineConfig toy_config(const std::filesystem::path& workdir);

llm::ModelRef toy_model();

/// Fortran source given to the Translator, and the reference program that
/// stands in for it: dgemm.f90 under the stub toolchain, dgemm_reference.cpp
/// when compiling for real.
workflow::PipelineInputs toy_inputs(const exec::TargetProfile& target);

/// `run` config for the toy kernel on the stub target, replaying `transcripts`.
nlohmann::json toy_run_config(const std::filesystem::path& workdir, const std::filesystem::path& transcripts);

/// Provider, gateway, agents and backend wired for one pipeline run.
struct ToyRig {
  std::shared_ptr<ScriptedProvider> provider;
  std::unique_ptr<llm::Gateway> gateway;
  std::unique_ptr<agents::Agents> agents;
  exec::TargetProfile target;
  std::unique_ptr<exec::Backend> backend;

  /// `store` is required for record and replay modes.
  ToyRig(ToyFault fault, exec::TargetProfile target, llm::LlmMode mode = llm::LlmMode::live,
         const std::filesystem::path& store = {});

  workflow::PipelineResult run(const workflow::PipelineConfig& cfg);
};

}  // namespace f2k::testing
