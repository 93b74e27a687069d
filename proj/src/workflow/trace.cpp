#include "f2k/workflow/trace.hpp"

#include <fstream>

#include "f2k/errors.hpp"
#include "f2k/text.hpp"

namespace f2k::workflow {

TraceLog::TraceLog(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
}

void TraceLog::append(const nlohmann::json& record) {
  std::lock_guard lock(mutex_);
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw IoFailure("cannot append to trace " + path_.string());
  out << record.dump() << '\n';
  if (!out) throw IoFailure("write failed on trace " + path_.string());
}

std::vector<nlohmann::json> read_trace(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) throw MissingData("no trace log at " + path.string());
  std::vector<nlohmann::json> out;
  std::size_t n = 0;
  for (const auto& line : text::split_lines(text::read_file(path))) {
    ++n;
    if (text::trim(line).empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ParseError(path.string() + ":" + std::to_string(n) + ": invalid JSON");
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace f2k::workflow
