#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "f2k/profiler/opt_report.hpp"

namespace f2k::profiler {

enum class DiagnosticsSource { opt_report, metric_thresholds, none };

std::string_view to_string(DiagnosticsSource source);

/// Profiler feedback as handed to the Optimizer.
struct ProfileDiagnostics {
  DiagnosticsSource source = DiagnosticsSource::none;
  std::vector<std::string> findings;
  std::string summary_text;  // a function of findings and the line cap only
};

inline constexpr std::size_t kDefaultSummaryLineCap = 20;
inline constexpr std::string_view kNoFindingsSummary = "no profiler findings";

/// OPT points become findings in report order, speedups appended when known.
ProfileDiagnostics synthesize_summary(const std::vector<OptPoint>& points,
                                      std::size_t line_cap = kDefaultSummaryLineCap);
/// Threshold findings kept in rule order.
ProfileDiagnostics synthesize_summary(const std::vector<std::string>& findings,
                                      std::size_t line_cap = kDefaultSummaryLineCap);

/// Renders findings as numbered lines. More than `line_cap` findings keeps the
/// first `line_cap` and adds one truncation line; none gives kNoFindingsSummary.
std::string render_summary(const std::vector<std::string>& findings, std::size_t line_cap);

}  // namespace f2k::profiler
