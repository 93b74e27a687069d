#include "f2k/llm/http_provider.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <cstdlib>

#include "f2k/errors.hpp"

namespace f2k::llm {
namespace {

using nlohmann::json;

struct Endpoint {
  std::string origin;     // scheme://host[:port]
  std::string base_path;  // "" or "/v1" etc, no trailing slash
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigInvalid("endpoint '" + url + "' has no scheme");
  const auto path_start = url.find('/', scheme_end + 3);
  Endpoint e;
  e.origin = url.substr(0, path_start);
  if (path_start != std::string::npos) e.base_path = url.substr(path_start);
  while (!e.base_path.empty() && e.base_path.back() == '/') e.base_path.pop_back();
  return e;
}

}  // namespace

HttpChatProvider::HttpChatProvider() : HttpChatProvider(Options{}) {}

HttpChatProvider::HttpChatProvider(Options options) : options_(std::move(options)) {}

std::string HttpChatProvider::request_body(const ModelRef& model, const ChatRequest& request) {
  json body = {{"model", model.name},
               {"messages", json::array({{{"role", "system"}, {"content", request.system}},
                                         {{"role", "user"}, {"content", request.user}}})}};
  return body.dump();
}

CompletionResult HttpChatProvider::parse_response(const std::string& body, const std::string& model_name) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw MalformedResponse(std::string("response is not JSON: ") + e.what());
  }
  CompletionResult r;
  r.model = model_name;
  try {
    const auto& content = j.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw MalformedResponse("message content is not a string");
    r.text = content.get<std::string>();
    if (j.contains("usage") && j["usage"].is_object()) {
      const auto& u = j["usage"];
      r.usage.input_tokens = u.value("prompt_tokens", std::uint64_t{0});
      r.usage.output_tokens = u.value("completion_tokens", std::uint64_t{0});
    }
  } catch (const json::exception& e) {
    throw MalformedResponse(std::string("unexpected response shape: ") + e.what());
  }
  if (r.text.empty()) throw MalformedResponse("model returned empty content");
  return r;
}

CompletionResult HttpChatProvider::complete(const ModelRef& model, const ChatRequest& request) {
  const auto endpoint = split_endpoint(model.endpoint);
  httplib::Client client(endpoint.origin);
  const auto secs = static_cast<time_t>(options_.timeout.count());
  client.set_connection_timeout(secs < 30 ? secs : 30, 0);
  client.set_read_timeout(secs, 0);
  client.set_write_timeout(secs, 0);

  httplib::Headers headers;
  for (const auto& [k, v] : options_.extra_headers) headers.emplace(k, v);
  if (!model.api_key_env.empty()) {
    if (const char* key = std::getenv(model.api_key_env.c_str()); key && *key)
      headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  const auto started = std::chrono::steady_clock::now();
  auto res = client.Post(endpoint.base_path + "/chat/completions", headers, request_body(model, request),
                         "application/json");
  if (!res) {
    throw TransportError("transport error contacting " + model.endpoint + ": " +
                              httplib::to_string(res.error()));
  }
  if (res->status == 429) throw RateLimited("rate limited by " + model.endpoint);
  if (res->status < 200 || res->status >= 300) {
    // Non-transport HTTP errors are semantic: not retried.
    throw ProviderUnavailable("HTTP " + std::to_string(res->status) + " from " + model.endpoint + ": " +
                              res->body.substr(0, 512));
  }
  auto result = parse_response(res->body, model.name);
  result.latency_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace f2k::llm
