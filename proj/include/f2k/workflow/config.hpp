#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "f2k/functest/compare.hpp"
#include "f2k/kernel.hpp"
#include "f2k/perf/iterations.hpp"
#include "f2k/perf/sweep.hpp"

namespace f2k::workflow {

struct PipelineConfig {
  KernelId kernel_id = KernelId::custom;
  std::string kernel_name;  // directory and prompt name; defaults to the kernel id
  std::string target_id;
  std::string model_ref;

  int max_compile_fixes = 20;
  int max_runtime_fixes = 20;
  int max_functionality_fixes = 10;
  int max_optimization_rounds = 5;

  std::uint64_t min_n = 1;
  std::uint64_t max_n = 1;
  std::uint64_t num_sizes = 1;
  perf::SizeSpacing size_spacing = perf::SizeSpacing::uniform;
  perf::IterationPolicy program_iterations;
  std::uint64_t kernel_repetitions = 1;
  std::filesystem::path workdir;

  std::uint64_t functionality_sizes = 3;
  std::uint64_t functionality_repetitions = 1;
  double functionality_tolerance = functest::kDefaultTolerance;
  std::optional<functest::CompareRule> compare_rule;  // default: functest::rule_for(kernel_id)
  std::string capture_array;  // default: functest::default_capture_array(kernel_id)

  /// Shell lines run in the workdir before and after the pipeline.
  std::vector<std::string> cleanup_commands;
  std::size_t profile_summary_lines = 20;

  /// Throws ConfigInvalid naming the first broken field.
  void validate() const;

  std::string effective_kernel_name() const;
  functest::CompareRule effective_compare_rule() const;

  /// Benchmark defaults for `kernel` on `partition` (sizes, spacing,
  /// iteration policy, repetitions); budgets 20/20/10/5.
  static PipelineConfig defaults_for(KernelId kernel, std::string_view partition);
};

}  // namespace f2k::workflow
