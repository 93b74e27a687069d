#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "f2k/exec/backend.hpp"
#include "f2k/exec/target.hpp"
#include "f2k/functest/compare.hpp"

namespace f2k::functest {

struct SizeVerdict {
  std::int64_t n = 0;
  bool pass = false;
  double max_abs_diff = 0.0;  // elementwise_tol
  bool any_nonzero = false;  // nonzero
  std::string detail;  // why the size failed; empty on pass
};

struct FunctionalityReport {
  bool pass = false;  // every size passed
  std::vector<SizeVerdict> per_size;
  double tolerance = kDefaultTolerance;
  CompareRule rule = CompareRule::elementwise_tol;
  std::vector<std::int64_t> sizes_tested;

  nlohmann::json to_json() const;
  /// Failing sizes and their reasons, for the FunctionalityFixer.
  std::string diagnosis() const;
};

struct EquivalenceRun {
  std::filesystem::path instrumented_exe;
  std::filesystem::path baseline_exe;
  std::vector<std::int64_t> sizes;
  std::int64_t reps = 1;
  std::string csv_name = "functionality_output.csv";
  double tolerance = kDefaultTolerance;
  CompareRule rule = CompareRule::elementwise_tol;
  std::filesystem::path workdir;  // per-size run directories go here
};

/// Runs both programs at every size with identical (n, reps), profiling off,
/// and compares their captures. Failures of the translated program are
/// recorded per size; a baseline that fails or writes no capture raises
/// MissingCsv, since it is the reference.
FunctionalityReport run_equivalence(const EquivalenceRun& run, const exec::TargetProfile& target,
                                    exec::Backend& backend);

}  // namespace f2k::functest
