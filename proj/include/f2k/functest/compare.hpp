#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "f2k/kernel.hpp"

namespace f2k::functest {

enum class CompareRule { elementwise_tol, nonzero };

std::string_view to_string(CompareRule rule);

/// The nonzero rule for EP (pseudo-random output), elementwise otherwise.
CompareRule rule_for(KernelId kernel);

inline constexpr double kDefaultTolerance = 1e-6;

struct CompareResult {
  bool pass = false;
  double max_abs_diff = 0.0;  // elementwise_tol only
  bool any_nonzero = false;  // nonzero only; looks at the first sequence
  std::size_t values = 0;
};

/// Numbers separated by commas, semicolons or whitespace. Fortran 'D'
/// exponents are accepted. Throws ParseError, including for no values at all.
std::vector<double> parse_capture_csv(std::string_view text);

/// Elementwise: pass iff max |a_i - b_i| <= tolerance (NaN fails); throws
/// LengthMismatch. Nonzero: pass iff some |a_i| > 0; `b` is ignored.
CompareResult compare_values(const std::vector<double>& a, const std::vector<double>& b, double tolerance,
                             CompareRule rule);
CompareResult compare_outputs(std::string_view csv_a, std::string_view csv_b, double tolerance, CompareRule rule);

}  // namespace f2k::functest
