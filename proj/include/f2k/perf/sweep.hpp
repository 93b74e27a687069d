#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "f2k/kernel.hpp"
#include "f2k/perf/iterations.hpp"

namespace f2k::perf {

enum class SizeSpacing { uniform, logarithmic };

std::string_view to_string(SizeSpacing s);
SizeSpacing parse_size_spacing(std::string_view name);

/// `count` sizes from n_min to n_max inclusive, ascending and de-duplicated
/// (rounding can merge neighbours on narrow ranges). count == 1 yields {n_max}.
std::vector<std::uint64_t> sweep_sizes(std::uint64_t n_min, std::uint64_t n_max, std::uint64_t count,
                                       SizeSpacing spacing);

/// Benchmark run settings per kernel and hardware partition.
struct KernelRunSettings {
  std::uint64_t min_n = 1;
  std::uint64_t max_n = 1;
  std::uint64_t num_sizes = 1;
  SizeSpacing spacing = SizeSpacing::uniform;
  IterationPolicy iterations;
  std::uint64_t repetitions = 1;
};

/// `partition` is one of "MI250", "A100", "GH200" (case-insensitive); other
/// names fall back to the MI250 repetition count.
KernelRunSettings default_run_settings(KernelId kernel, std::string_view partition);

}  // namespace f2k::perf
