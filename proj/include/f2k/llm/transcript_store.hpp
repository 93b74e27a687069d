#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "f2k/llm/types.hpp"

namespace f2k::llm {

/// One recorded exchange. On disk:
///   {"role", "system", "user", "response", "input_tokens", "output_tokens"}
struct Transcript {
  std::string role;
  std::string system;
  std::string user;
  std::string response;
  TokenUsage usage;

  nlohmann::json to_json() const;
  static Transcript from_json(const nlohmann::json& j);  // throws MalformedResponse
};

/// Stable replay key: SHA-256 over role, system prompt and user content.
std::string replay_key(const ChatRequest& request);

/// Directory of `<key>.json` transcript fixtures.
class TranscriptStore {
 public:
  explicit TranscriptStore(std::filesystem::path dir);

  const std::filesystem::path& directory() const { return dir_; }
  std::filesystem::path path_for(const std::string& key) const;

  std::optional<Transcript> load(const ChatRequest& request) const;
  /// Writes (or overwrites) the fixture for the transcript's request.
  void save(const Transcript& transcript) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace f2k::llm
