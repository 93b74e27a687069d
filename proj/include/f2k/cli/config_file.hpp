#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string_view>

#include "f2k/agents/agents.hpp"
#include "f2k/exec/target.hpp"
#include "f2k/llm/gateway.hpp"
#include "f2k/workflow/config.hpp"
#include "f2k/workflow/pipeline.hpp"

namespace f2k::cli {

struct LlmSettings {
  llm::LlmMode mode = llm::LlmMode::live;
  std::optional<std::filesystem::path> transcripts;  // required for replay and record
  llm::RetryPolicy retry;
  std::chrono::seconds timeout{600};
};

/// Everything `run` needs, resolved from one JSON file. Relative paths are
/// taken relative to the file's directory.
struct RunConfig {
  workflow::PipelineConfig pipeline;
  workflow::PipelineInputs inputs;
  exec::TargetProfile target;
  agents::RoleModels models;
  LlmSettings llm;
  std::optional<std::filesystem::path> prompt_dir;
  std::optional<std::filesystem::path> threshold_rules;  // default: the built-in table
};

/// Parses and validates. PIPELINE_LLM_MODE, when set, overrides "llm.mode".
/// Throws ConfigInvalid for any problem, including unknown keys.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir);

}  // namespace f2k::cli
