#include "f2k/perf/roofline.hpp"

#include <fmt/format.h>

#include <cmath>

#include "f2k/errors.hpp"

namespace f2k::perf {

std::string_view to_string(BoundClass b) {
  return b == BoundClass::memory_bound ? "memory_bound" : "compute_bound";
}

RooflinePoint roofline_point(double achieved_flops_per_s, double arithmetic_intensity, double peak_flops_per_s,
                             double ridge_point) {
  for (double v : {achieved_flops_per_s, arithmetic_intensity, peak_flops_per_s, ridge_point}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw PreconditionViolation("roofline inputs must be finite and > 0");
  }
  RooflinePoint p;
  p.achieved_flops_per_s = achieved_flops_per_s;
  p.arithmetic_intensity = arithmetic_intensity;
  p.peak_flops_per_s = peak_flops_per_s;
  p.ridge_point = ridge_point;
  p.percent_of_peak = achieved_flops_per_s / peak_flops_per_s * 100.0;
  p.bound_class = arithmetic_intensity < ridge_point ? BoundClass::memory_bound : BoundClass::compute_bound;
  return p;
}

std::string roofline_csv(const std::vector<RooflineRow>& rows) {
  std::string out = "kernel,size,achieved_flops_per_s,arithmetic_intensity,percent_of_peak,bound_class\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{:.6e},{:.6g},{:.2f},{}\n", r.kernel, r.size, r.point.achieved_flops_per_s,
                       r.point.arithmetic_intensity, r.point.percent_of_peak, to_string(r.point.bound_class));
  }
  return out;
}

}  // namespace f2k::perf
