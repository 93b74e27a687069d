#include "f2k/workflow/summary_csv.hpp"

#include <fstream>

#include <fmt/format.h>

#include "f2k/errors.hpp"
#include "f2k/text.hpp"
#include "f2k/workflow/version_store.hpp"

namespace f2k::workflow {
namespace {

// Quotes a field holding a comma, quote or newline.
std::string field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  return "\"" + text::replace_all(std::string(s), "\"", "\"\"") + "\"";
}

}  // namespace

std::string summary_header(const RunSummaryRow& row) {
  std::string h = "kernel,model,target,version";
  for (const auto& [n, t] : row.runtimes) h += fmt::format(",runtime_n{}", n);
  h += ",build_fixes,run_fixes,func_fixes,input_tokens,output_tokens,cost_usd,elapsed_s";
  return h;
}

std::string summary_line(const RunSummaryRow& row) {
  std::string s = fmt::format("{},{},{},{}", field(row.kernel), field(row.model), field(row.target), row.version);
  for (const auto& [n, t] : row.runtimes) s += fmt::format(",{:.6f}", t);
  s += fmt::format(",{},{},{},{},{},{:.2f},{:.3f}", row.build_fixes, row.run_fixes, row.func_fixes,
                   row.usage.input_tokens, row.usage.output_tokens, row.cost_usd, row.elapsed_seconds);
  return s;
}

void append_summary_row(const RunSummaryRow& row, const std::filesystem::path& csv_path) {
  if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
  FileLock lock(csv_path.string() + ".lock");
  const auto header = summary_header(row);
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(csv_path, ec) || std::filesystem::file_size(csv_path, ec) == 0;
  if (!fresh) {
    const auto existing = text::read_file(csv_path);
    const auto first = existing.substr(0, existing.find('\n'));
    if (text::trim(first) != header)
      throw IoFailure("summary CSV " + csv_path.string() + " has a different header: " + std::string(first));
  }
  std::ofstream out(csv_path, std::ios::app | std::ios::binary);
  if (!out) throw IoFailure("cannot append to " + csv_path.string());
  if (fresh) out << header << '\n';
  out << summary_line(row) << '\n';
  out.flush();
  if (!out) throw IoFailure("write failed on " + csv_path.string());
}

}  // namespace f2k::workflow
