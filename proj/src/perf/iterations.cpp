#include "f2k/perf/iterations.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "f2k/errors.hpp"

namespace f2k::perf {

void IterationPolicy::validate() const {
  if (iter_min < 1) throw ConfigInvalid("iteration policy: iter_min must be >= 1");
  if (iter_min > iter_max) throw ConfigInvalid("iteration policy: iter_min > iter_max");
  if (kind != IterationPolicyKind::fixed_cap && iter_max < kMinScaledIterations)
    throw ConfigInvalid("iteration policy: scaled policies need iter_max >= 2");
}

std::uint64_t scaled_iterations(const IterationPolicy& policy, std::uint64_t n, std::uint64_t n_min,
                                std::uint64_t n_max) {
  if (n_min < 1 || n_min > n || n > n_max)
    throw PreconditionViolation("scaled_iterations requires 1 <= n_min <= n <= n_max");
  switch (policy.kind) {
    case IterationPolicyKind::inverse_scale: {
      // round-half-up of iter_max * n_min / n in integers: floor((2a + b) / 2b)
      const unsigned __int128 a = static_cast<unsigned __int128>(policy.iter_max) * n_min;
      const unsigned __int128 b = n;
      const auto rounded = static_cast<std::uint64_t>((2 * a + b) / (2 * b));
      const std::uint64_t floor = std::max(kMinScaledIterations, policy.iter_min);
      return std::clamp(rounded, std::min(floor, policy.iter_max), policy.iter_max);
    }
    case IterationPolicyKind::fixed_at_min_then_two:
      return n == n_min ? policy.iter_max : kMinScaledIterations;
    case IterationPolicyKind::fixed_cap:
      return policy.iter_max;
  }
  return policy.iter_max;
}

IterationPolicy default_iteration_policy(KernelId kernel) {
  switch (kernel) {
    case KernelId::CG: return {IterationPolicyKind::fixed_cap, 10, 10};
    case KernelId::EP: return {IterationPolicyKind::inverse_scale, 2, 5};
    case KernelId::MG: return {IterationPolicyKind::inverse_scale, 2, 10};
    case KernelId::FT: return {IterationPolicyKind::inverse_scale, 2, 5};
    case KernelId::DGEMM: return {IterationPolicyKind::fixed_at_min_then_two, 2, 5};
    case KernelId::custom: return {IterationPolicyKind::fixed_cap, 1, 1};
  }
  return {};
}

const char* to_string(IterationPolicyKind kind) {
  switch (kind) {
    case IterationPolicyKind::inverse_scale: return "inverse_scale";
    case IterationPolicyKind::fixed_at_min_then_two: return "fixed_at_min_then_two";
    case IterationPolicyKind::fixed_cap: return "fixed_cap";
  }
  return "fixed_cap";
}

IterationPolicyKind parse_iteration_policy(const char* name) {
  if (std::strcmp(name, "inverse_scale") == 0) return IterationPolicyKind::inverse_scale;
  if (std::strcmp(name, "fixed_at_min_then_two") == 0) return IterationPolicyKind::fixed_at_min_then_two;
  if (std::strcmp(name, "fixed_cap") == 0) return IterationPolicyKind::fixed_cap;
  throw ConfigInvalid(std::string("unknown iteration policy '") + name + "'");
}

}  // namespace f2k::perf
