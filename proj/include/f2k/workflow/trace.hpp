#pragma once

#include <filesystem>
#include <mutex>
#include <vector>

#include <nlohmann/json.hpp>

namespace f2k::workflow {

/// Append-only JSON-lines log: one record per agent invocation and per job.
class TraceLog {
 public:
  explicit TraceLog(std::filesystem::path path);

  /// Appends `record` as one line. Throws IoFailure.
  void append(const nlohmann::json& record);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mutex_;
};

/// Parses every line of a trace file. Throws MissingData / ParseError.
std::vector<nlohmann::json> read_trace(const std::filesystem::path& path);

}  // namespace f2k::workflow
