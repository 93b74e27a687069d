#include "f2k/profiler/summary.hpp"

#include <fmt/format.h>

namespace f2k::profiler {

std::string_view to_string(DiagnosticsSource source) {
  switch (source) {
    case DiagnosticsSource::opt_report: return "opt_report";
    case DiagnosticsSource::metric_thresholds: return "metric_thresholds";
    case DiagnosticsSource::none: return "none";
  }
  return "none";
}

std::string render_summary(const std::vector<std::string>& findings, std::size_t line_cap) {
  if (findings.empty()) return std::string(kNoFindingsSummary);
  std::string out;
  const std::size_t shown = std::min(findings.size(), line_cap);
  for (std::size_t i = 0; i < shown; ++i) out += fmt::format("{}. {}\n", i + 1, findings[i]);
  if (shown < findings.size())
    out += fmt::format("({} more findings truncated; {} total)\n", findings.size() - shown, findings.size());
  return out;
}

ProfileDiagnostics synthesize_summary(const std::vector<OptPoint>& points, std::size_t line_cap) {
  ProfileDiagnostics d;
  d.source = DiagnosticsSource::opt_report;
  for (const auto& p : points) {
    std::string f = p.kernel_loop.empty() ? p.advisory_text : fmt::format("[{}] {}", p.kernel_loop, p.advisory_text);
    if (p.estimated_speedup) f += fmt::format(" (estimated speedup {:g}%)", *p.estimated_speedup);
    d.findings.push_back(std::move(f));
  }
  if (d.findings.empty()) d.source = DiagnosticsSource::none;
  d.summary_text = render_summary(d.findings, line_cap);
  return d;
}

ProfileDiagnostics synthesize_summary(const std::vector<std::string>& findings, std::size_t line_cap) {
  ProfileDiagnostics d;
  d.source = DiagnosticsSource::metric_thresholds;
  d.findings = findings;
  if (d.findings.empty()) d.source = DiagnosticsSource::none;
  d.summary_text = render_summary(d.findings, line_cap);
  return d;
}

}  // namespace f2k::profiler
