#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "f2k/llm/types.hpp"

namespace f2k::workflow {

/// One completed version in the run summary.
struct RunSummaryRow {
  std::string kernel;
  std::string model;
  std::string target;
  int version = 0;
  std::vector<std::pair<std::uint64_t, double>> runtimes;  // (n, seconds), ascending n
  int build_fixes = 0;
  int run_fixes = 0;
  int func_fixes = 0;
  llm::TokenUsage usage;  // this version's agent calls
  double cost_usd = 0.0;
  double elapsed_seconds = 0.0;
};

/// kernel,model,target,version,runtime_n<n>...,build_fixes,run_fixes,func_fixes,input_tokens,output_tokens,cost_usd,elapsed_s
std::string summary_header(const RunSummaryRow& row);
/// Runtimes with 6 decimals, cost with 2, elapsed with 3.
std::string summary_line(const RunSummaryRow& row);

/// Appends under an exclusive lock, writing the header first when the file is
/// new. Throws IoFailure, also when an existing header names other sizes.
void append_summary_row(const RunSummaryRow& row, const std::filesystem::path& csv_path);

}  // namespace f2k::workflow
