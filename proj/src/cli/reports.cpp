#include "f2k/cli/reports.hpp"

#include <map>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "f2k/errors.hpp"
#include "f2k/llm/pricing.hpp"
#include "f2k/perf/roofline.hpp"
#include "f2k/text.hpp"
#include "f2k/workflow/pipeline.hpp"
#include "f2k/workflow/trace.hpp"

namespace f2k::cli {
namespace {

using nlohmann::json;
using Table = std::vector<std::vector<std::string>>;  // first row is the header

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  return "\"" + text::replace_all(s, "\"", "\"\"") + "\"";
}

std::string table_csv(const Table& t) {
  std::string out;
  for (const auto& row : t) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += '\n';
  }
  return out;
}

// Whitespace-separated columns with a commented header, for gnuplot and friends.
std::string table_plot(const Table& t) {
  std::string out;
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (r == 0) out += "# ";
    for (std::size_t i = 0; i < t[r].size(); ++i) {
      std::string cell = t[r][i].empty() ? "NaN" : t[r][i];
      for (auto& c : cell)
        if (c == ' ' || c == '\t') c = '_';
      out += (i ? " " : "") + cell;
    }
    out += '\n';
  }
  return out;
}

// Numbers stay numbers; empty cells become null.
json cell_json(const std::string& s) {
  if (s.empty()) return nullptr;
  const auto j = json::parse(s, nullptr, false);
  if (!j.is_discarded() && j.is_number()) return j;
  return s;
}

std::string table_json(const Table& t) {
  json rows = json::array();
  for (std::size_t r = 1; r < t.size(); ++r) {
    json row = json::object();
    for (std::size_t i = 0; i < t[0].size() && i < t[r].size(); ++i) row[t[0][i]] = cell_json(t[r][i]);
    rows.push_back(std::move(row));
  }
  return rows.dump(2) + "\n";
}

std::string render(const Table& t, ReportFormat f) {
  switch (f) {
    case ReportFormat::csv: return table_csv(t);
    case ReportFormat::json: return table_json(t);
    case ReportFormat::plot_data: return table_plot(t);
  }
  return table_csv(t);
}

json read_json(const std::filesystem::path& p) {
  std::error_code ec;
  if (!std::filesystem::exists(p, ec)) throw MissingData("missing " + p.string());
  auto j = json::parse(text::read_file(p), nullptr, false);
  if (j.is_discarded()) throw MissingData("unreadable JSON in " + p.string());
  return j;
}

struct PipelineInfo {
  std::string kernel;
  std::uint64_t max_n = 0;
  std::uint64_t kernel_repetitions = 0;
};

PipelineInfo pipeline_info(const std::filesystem::path& workdir) {
  const auto j = read_json(workdir / workflow::kPipelineJsonName);
  try {
    return {j.at("kernel").get<std::string>(), j.at("max_n").get<std::uint64_t>(),
            j.at("kernel_repetitions").get<std::uint64_t>()};
  } catch (const json::exception& e) {
    throw MissingData(std::string("pipeline.json: ") + e.what());
  }
}

std::vector<workflow::CodeVersion> load_versions(const std::filesystem::path& workdir, const std::string& kernel) {
  std::map<int, workflow::CodeVersion> by_number;
  std::error_code ec;
  const std::string prefix = kernel + ".v";
  for (const auto& entry : std::filesystem::directory_iterator(workdir, ec)) {
    const auto name = entry.path().filename().string();
    if (!entry.is_directory() || !name.starts_with(prefix)) continue;
    const auto file = entry.path() / workflow::kVersionJsonName;
    if (!std::filesystem::exists(file, ec)) continue;
    try {
      auto v = workflow::CodeVersion::from_json(read_json(file));
      v.dir = entry.path();
      by_number.emplace(v.version, std::move(v));
    } catch (const ParseError& e) {
      throw MissingData(file.string() + ": " + e.what());
    }
  }
  std::vector<workflow::CodeVersion> out;
  for (auto& [k, v] : by_number) out.push_back(std::move(v));
  if (out.empty()) throw MissingData("no version records under " + workdir.string());
  return out;
}

std::string fixed(double v, int digits) { return fmt::format("{:.{}f}", v, digits); }

std::string summary_report(const ReportRequest& r) {
  const auto path = r.workdir / workflow::kSummaryCsvName;
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) throw MissingData("missing " + path.string());
  const auto content = text::read_file(path);
  if (r.format == ReportFormat::csv) return content;
  Table t;
  for (const auto& line : text::split_lines(content))
    if (!text::trim(line).empty()) t.push_back(split_csv_line(line));
  if (t.empty()) throw MissingData(path.string() + " is empty");
  if (r.format == ReportFormat::json) return table_json(t);
  // plot_data: one (version, n, runtime) point per line.
  Table points{{"version", "n", "runtime_s"}};
  const auto& header = t.front();
  for (std::size_t row = 1; row < t.size(); ++row) {
    for (std::size_t i = 0; i < header.size() && i < t[row].size(); ++i) {
      if (!header[i].starts_with("runtime_n")) continue;
      points.push_back({t[row][3], header[i].substr(9), t[row][i]});
    }
  }
  return table_plot(points);
}

std::string trajectory_report(const ReportRequest& r) {
  const auto info = pipeline_info(r.workdir);
  Table t{{"version", "max_n", "gflops_at_max_n"}};
  for (const auto& v : load_versions(r.workdir, info.kernel)) {
    if (v.status != workflow::VersionStatus::tested_ok) continue;
    t.push_back({std::to_string(v.version), std::to_string(info.max_n),
                 v.gflops_at_max_n ? fmt::format("{:.6f}", *v.gflops_at_max_n) : ""});
  }
  return render(t, r.format);
}

std::string roofline_report(const ReportRequest& r) {
  if (!r.roofline.arithmetic_intensity) throw MissingData("roofline report needs the arithmetic intensity (--ai)");
  const auto info = pipeline_info(r.workdir);
  std::vector<perf::RooflineRow> rows;
  for (const auto& v : load_versions(r.workdir, info.kernel)) {
    if (v.status != workflow::VersionStatus::tested_ok || !v.gflops_at_max_n || *v.gflops_at_max_n <= 0) continue;
    rows.push_back({fmt::format("{}.v{}", info.kernel, v.version), info.max_n,
                    perf::roofline_point(*v.gflops_at_max_n * 1e9, *r.roofline.arithmetic_intensity,
                                         r.roofline.peak_flops_per_s, r.roofline.ridge_point)});
  }
  if (r.format == ReportFormat::csv) return perf::roofline_csv(rows);
  Table t{{"kernel", "size", "achieved_flops_per_s", "arithmetic_intensity", "percent_of_peak", "bound_class"}};
  for (const auto& row : rows)
    t.push_back({row.kernel, std::to_string(row.size), fmt::format("{:.6e}", row.point.achieved_flops_per_s),
                 fmt::format("{:g}", row.point.arithmetic_intensity), fmt::format("{:.3f}", row.point.percent_of_peak),
                 std::string(perf::to_string(row.point.bound_class))});
  return render(t, r.format);
}

std::string cost_report(const ReportRequest& r) {
  struct Totals {
    std::uint64_t calls = 0;
    llm::TokenUsage usage;
    double cost = 0.0;
  };
  std::map<std::pair<std::string, std::string>, Totals> by_role_model;
  Totals all;
  for (const auto& rec : workflow::read_trace(r.workdir / workflow::kTraceName)) {
    if (rec.value("type", "") != "agent") continue;
    try {
      llm::ModelRef model;
      model.name = rec.at("model").get<std::string>();
      model.price_in_per_mtok = rec.at("price_in_per_mtok").get<double>();
      model.price_out_per_mtok = rec.at("price_out_per_mtok").get<double>();
      const llm::TokenUsage u{rec.at("input_tokens").get<std::uint64_t>(), rec.at("output_tokens").get<std::uint64_t>()};
      const double cost = llm::compute_cost(u, model);
      auto& t = by_role_model[{rec.at("role").get<std::string>(), model.name}];
      for (auto* x : {&t, &all}) {
        ++x->calls;
        x->usage += u;
        x->cost += cost;
      }
    } catch (const json::exception& e) {
      throw MissingData(std::string("trace agent record: ") + e.what());
    }
  }
  Table t{{"role", "model", "calls", "input_tokens", "output_tokens", "cost_usd"}};
  for (const auto& [key, x] : by_role_model)
    t.push_back({key.first, key.second, std::to_string(x.calls), std::to_string(x.usage.input_tokens),
                 std::to_string(x.usage.output_tokens), fixed(x.cost, 6)});
  t.push_back({"total", "", std::to_string(all.calls), std::to_string(all.usage.input_tokens),
               std::to_string(all.usage.output_tokens), fixed(all.cost, 6)});
  return render(t, r.format);
}

std::string invocations_report(const ReportRequest& r) {
  const auto info = pipeline_info(r.workdir);
  Table t{{"version", "status", "build", "run", "functionality"}};
  int b = 0, ru = 0, f = 0;
  for (const auto& v : load_versions(r.workdir, info.kernel)) {
    t.push_back({std::to_string(v.version), std::string(workflow::to_string(v.status)), std::to_string(v.build_attempts),
                 std::to_string(v.run_attempts), std::to_string(v.functionality_attempts)});
    b += v.build_attempts;
    ru += v.run_attempts;
    f += v.functionality_attempts;
  }
  t.push_back({"total", "", std::to_string(b), std::to_string(ru), std::to_string(f)});
  return render(t, r.format);
}

}  // namespace

std::string_view to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::summary: return "summary";
    case ReportKind::trajectory: return "trajectory";
    case ReportKind::roofline: return "roofline";
    case ReportKind::cost: return "cost";
    case ReportKind::invocations: return "invocations";
  }
  return "summary";
}

std::string_view to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: return "csv";
    case ReportFormat::json: return "json";
    case ReportFormat::plot_data: return "plot_data";
  }
  return "csv";
}

ReportKind parse_report_kind(std::string_view name) {
  for (auto k : {ReportKind::summary, ReportKind::trajectory, ReportKind::roofline, ReportKind::cost,
                 ReportKind::invocations})
    if (to_string(k) == name) return k;
  throw ConfigInvalid("unknown report kind '" + std::string(name) + "'");
}

ReportFormat parse_report_format(std::string_view name) {
  for (auto f : {ReportFormat::csv, ReportFormat::json, ReportFormat::plot_data})
    if (to_string(f) == name) return f;
  throw ConfigInvalid("unknown report format '" + std::string(name) + "'");
}

std::string render_report(const ReportRequest& request) {
  std::error_code ec;
  if (!std::filesystem::is_directory(request.workdir, ec))
    throw MissingData("workdir does not exist: " + request.workdir.string());
  switch (request.kind) {
    case ReportKind::summary: return summary_report(request);
    case ReportKind::trajectory: return trajectory_report(request);
    case ReportKind::roofline: return roofline_report(request);
    case ReportKind::cost: return cost_report(request);
    case ReportKind::invocations: return invocations_report(request);
  }
  return {};
}

std::string write_report(const ReportRequest& request) {
  auto content = render_report(request);
  if (!request.output.empty() && request.output != "-") text::write_file(request.output, content);
  return content;
}

}  // namespace f2k::cli
