#include "f2k/perf/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "f2k/errors.hpp"
#include "f2k/text.hpp"

namespace f2k::perf {

std::string_view to_string(SizeSpacing s) { return s == SizeSpacing::uniform ? "uniform" : "logarithmic"; }

SizeSpacing parse_size_spacing(std::string_view name) {
  const auto lower = text::to_lower(name);
  if (lower == "uniform") return SizeSpacing::uniform;
  if (lower == "logarithmic" || lower == "log") return SizeSpacing::logarithmic;
  throw ConfigInvalid("unknown size spacing '" + std::string(name) + "'");
}

std::vector<std::uint64_t> sweep_sizes(std::uint64_t n_min, std::uint64_t n_max, std::uint64_t count,
                                       SizeSpacing spacing) {
  if (n_min < 1 || n_min > n_max || count < 1)
    throw PreconditionViolation("sweep_sizes requires 1 <= n_min <= n_max and count >= 1");
  if (count == 1) return {n_max};
  std::vector<std::uint64_t> sizes;
  sizes.reserve(count);
  const double lo = static_cast<double>(n_min);
  const double hi = static_cast<double>(n_max);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    double v = spacing == SizeSpacing::uniform ? lo + t * (hi - lo) : std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    auto n = static_cast<std::uint64_t>(std::llround(v));
    sizes.push_back(std::clamp(n, n_min, n_max));
  }
  // Endpoints exact regardless of floating rounding.
  sizes.front() = n_min;
  sizes.back() = n_max;
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

KernelRunSettings default_run_settings(KernelId kernel, std::string_view partition) {
  const auto p = text::to_lower(partition);
  const int column = p == "a100" ? 1 : p == "gh200" ? 2 : 0;
  auto pick = [column](std::uint64_t mi250, std::uint64_t a100, std::uint64_t gh200) {
    return column == 1 ? a100 : column == 2 ? gh200 : mi250;
  };
  KernelRunSettings s;
  s.iterations = default_iteration_policy(kernel);
  switch (kernel) {
    case KernelId::CG:
      s.min_n = 1000, s.max_n = 1000000, s.num_sizes = 10, s.spacing = SizeSpacing::logarithmic;
      s.repetitions = pick(10, 1000, 1000);
      break;
    case KernelId::EP:
      s.min_n = 18, s.max_n = 28, s.num_sizes = 5;
      s.repetitions = pick(5, 50, 50);
      break;
    case KernelId::MG:
      s.min_n = 32, s.max_n = 256, s.num_sizes = 10;
      s.repetitions = pick(10, 250, 500);
      break;
    case KernelId::FT:
      s.min_n = 32, s.max_n = 128, s.num_sizes = 5;
      s.repetitions = pick(10, 100, 100);
      break;
    case KernelId::DGEMM:
      s.min_n = 1024, s.max_n = 8192, s.num_sizes = 5;
      s.repetitions = pick(2, 5, 5);
      break;
    case KernelId::custom:
      break;
  }
  return s;
}

}  // namespace f2k::perf
