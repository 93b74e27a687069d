#pragma once

#include <cstdint>

#include "f2k/kernel.hpp"

namespace f2k::perf {

enum class IterationPolicyKind { inverse_scale, fixed_at_min_then_two, fixed_cap };

/// How many program executions a size gets inside [n_min, n_max].
struct IterationPolicy {
  IterationPolicyKind kind = IterationPolicyKind::fixed_cap;
  std::uint64_t iter_min = 2;
  std::uint64_t iter_max = 2;

  /// Throws ConfigInvalid when the bounds cannot be honored
  /// (iter_min < 1, iter_min > iter_max, or iter_max < 2 for the scaled kinds).
  void validate() const;
};

inline constexpr std::uint64_t kMinScaledIterations = 2;

/// inverse_scale          round(iter_max * n_min / n) clamped to [2, iter_max]
/// fixed_at_min_then_two  iter_max at n == n_min, otherwise 2
/// fixed_cap              iter_max
/// Requires 1 <= n_min <= n <= n_max (PreconditionViolation otherwise).
std::uint64_t scaled_iterations(const IterationPolicy& policy, std::uint64_t n, std::uint64_t n_min,
                                std::uint64_t n_max);

/// Per-kernel policy matching the benchmark run settings.
IterationPolicy default_iteration_policy(KernelId kernel);

const char* to_string(IterationPolicyKind kind);
IterationPolicyKind parse_iteration_policy(const char* name);

}  // namespace f2k::perf
