#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace f2k::cli {

enum class ReportKind { summary, trajectory, roofline, cost, invocations };
enum class ReportFormat { csv, json, plot_data };

std::string_view to_string(ReportKind kind);
std::string_view to_string(ReportFormat format);
ReportKind parse_report_kind(std::string_view name);  // throws ConfigInvalid
ReportFormat parse_report_format(std::string_view name);  // throws ConfigInvalid

/// Machine numbers for the roofline report; `arithmetic_intensity` comes from
/// profiler data and has no default.
struct RooflineInputs {
  std::optional<double> arithmetic_intensity;
  double peak_flops_per_s = 7.5e12;
  double ridge_point = 4.8;
};

struct ReportRequest {
  ReportKind kind = ReportKind::summary;
  std::filesystem::path workdir;
  std::filesystem::path output;  // "-" or empty: return only
  ReportFormat format = ReportFormat::csv;
  RooflineInputs roofline;
};

/// Renders a report from the workdir's artifacts without modifying them:
///   summary      summary.csv
///   trajectory   gflops_at_max_n of every completed version, by version
///   roofline     completed versions placed against the roof at max_n
///   cost         agent records of trace.jsonl, priced per (role, model)
///   invocations  Build/Run/Functionality Tester invocations per version
/// Throws MissingData when an input is absent.
std::string render_report(const ReportRequest& request);

/// render_report, then writes the result to `request.output` when set.
std::string write_report(const ReportRequest& request);

}  // namespace f2k::cli
