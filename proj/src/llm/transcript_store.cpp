#include "f2k/llm/transcript_store.hpp"

#include "f2k/errors.hpp"
#include "f2k/text.hpp"

namespace f2k::llm {

nlohmann::json Transcript::to_json() const {
  return {{"role", role},
          {"system", system},
          {"user", user},
          {"response", response},
          {"input_tokens", usage.input_tokens},
          {"output_tokens", usage.output_tokens}};
}

Transcript Transcript::from_json(const nlohmann::json& j) {
  try {
    Transcript t;
    t.role = j.at("role").get<std::string>();
    t.system = j.at("system").get<std::string>();
    t.user = j.at("user").get<std::string>();
    t.response = j.at("response").get<std::string>();
    t.usage.input_tokens = j.at("input_tokens").get<std::uint64_t>();
    t.usage.output_tokens = j.at("output_tokens").get<std::uint64_t>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedResponse(std::string("bad transcript fixture: ") + e.what());
  }
}

std::string replay_key(const ChatRequest& request) {
  std::string material;
  material.reserve(request.role.size() + request.system.size() + request.user.size() + 2);
  material += request.role;
  material += '\0';
  material += request.system;
  material += '\0';
  material += request.user;
  return text::sha256_hex(material);
}

TranscriptStore::TranscriptStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path TranscriptStore::path_for(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<Transcript> TranscriptStore::load(const ChatRequest& request) const {
  const auto path = path_for(replay_key(request));
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw MalformedResponse("unreadable transcript " + path.string() + ": " + e.what());
  }
  auto t = Transcript::from_json(j);
  // A hash collision or hand-edited fixture must not replay the wrong exchange.
  if (t.role != request.role || t.system != request.system || t.user != request.user)
    throw MalformedResponse("transcript " + path.string() + " does not match its request");
  return t;
}

void TranscriptStore::save(const Transcript& transcript) const {
  const ChatRequest req{transcript.role, transcript.system, transcript.user};
  text::write_file(path_for(replay_key(req)), transcript.to_json().dump(2) + "\n");
}

}  // namespace f2k::llm
