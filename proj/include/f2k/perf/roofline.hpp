#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace f2k::perf {

enum class BoundClass { memory_bound, compute_bound };

std::string_view to_string(BoundClass b);

struct RooflinePoint {
  double achieved_flops_per_s = 0;
  double arithmetic_intensity = 0;  // FLOP/byte
  double peak_flops_per_s = 0;
  double ridge_point = 0;  // FLOP/byte
  double percent_of_peak = 0;
  BoundClass bound_class = BoundClass::memory_bound;

  /// peak / ridge: the bandwidth roof implied by the two machine numbers.
  double implied_bandwidth_bytes_per_s() const { return peak_flops_per_s / ridge_point; }
};

/// Places a measurement against the roof. All inputs must be > 0
/// (PreconditionViolation). An intensity exactly at the ridge is compute bound.
RooflinePoint roofline_point(double achieved_flops_per_s, double arithmetic_intensity, double peak_flops_per_s,
                             double ridge_point);

struct RooflineRow {
  std::string kernel;
  std::uint64_t size = 0;
  RooflinePoint point;
};

/// kernel,size,achieved_flops_per_s,arithmetic_intensity,percent_of_peak,bound_class
std::string roofline_csv(const std::vector<RooflineRow>& rows);

}  // namespace f2k::perf
