#include "f2k/workflow/config.hpp"

#include <cmath>

#include <fmt/format.h>

#include "f2k/errors.hpp"

namespace f2k::workflow {

void PipelineConfig::validate() const {
  const auto bad = [](const std::string& what) { throw ConfigInvalid(what); };
  if (target_id.empty()) bad("target_id is empty");
  if (model_ref.empty()) bad("model_ref is empty");
  if (max_compile_fixes < 1) bad("max_compile_fixes must be >= 1");
  if (max_runtime_fixes < 1) bad("max_runtime_fixes must be >= 1");
  if (max_functionality_fixes < 1) bad("max_functionality_fixes must be >= 1");
  if (max_optimization_rounds < 1) bad("max_optimization_rounds must be >= 1");
  if (min_n < 1) bad("min_n must be >= 1");
  if (max_n < min_n) bad(fmt::format("max_n ({}) is below min_n ({})", max_n, min_n));
  if (num_sizes < 1) bad("num_sizes must be >= 1");
  if (kernel_repetitions < 1) bad("kernel_repetitions must be >= 1");
  if (workdir.empty()) bad("workdir is empty");
  if (functionality_sizes < 1) bad("functionality_sizes must be >= 1");
  if (functionality_repetitions < 1) bad("functionality_repetitions must be >= 1");
  if (!std::isfinite(functionality_tolerance) || functionality_tolerance < 0)
    bad("functionality_tolerance must be a finite non-negative number");
  if (profile_summary_lines < 1) bad("profile_summary_lines must be >= 1");
  const auto name = effective_kernel_name();
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
      bad("kernel_name may only contain letters, digits, '_' and '-'");
  }
  program_iterations.validate();
}

std::string PipelineConfig::effective_kernel_name() const {
  return kernel_name.empty() ? std::string(to_string(kernel_id)) : kernel_name;
}

functest::CompareRule PipelineConfig::effective_compare_rule() const {
  return compare_rule.value_or(functest::rule_for(kernel_id));
}

PipelineConfig PipelineConfig::defaults_for(KernelId kernel, std::string_view partition) {
  const auto s = perf::default_run_settings(kernel, partition);
  PipelineConfig c;
  c.kernel_id = kernel;
  c.min_n = s.min_n;
  c.max_n = s.max_n;
  c.num_sizes = s.num_sizes;
  c.size_spacing = s.spacing;
  c.program_iterations = s.iterations;
  c.kernel_repetitions = s.repetitions;
  return c;
}

}  // namespace f2k::workflow
