#pragma once

#include <chrono>
#include <map>
#include <string>

#include "f2k/llm/types.hpp"

namespace f2k::llm {

/// OpenAI-compatible `POST {endpoint}/chat/completions` client. Serves hosted
/// APIs and self-hosted proxies (LiteLLM, Ollama) alike. A fresh connection
/// is used per call, so concurrent calls are safe.
class HttpChatProvider : public ChatProvider {
 public:
  struct Options {
    std::chrono::seconds timeout{600};
    /// Extra HTTP headers sent with every request (e.g. an "api-key" header).
    std::map<std::string, std::string> extra_headers;
  };

  HttpChatProvider();
  explicit HttpChatProvider(Options options);

  CompletionResult complete(const ModelRef& model, const ChatRequest& request) override;

  /// Builds the request body for `model` (exposed for tests).
  static std::string request_body(const ModelRef& model, const ChatRequest& request);
  /// Parses a chat-completions response body. Throws MalformedResponse.
  static CompletionResult parse_response(const std::string& body, const std::string& model_name);

 private:
  Options options_;
};

}  // namespace f2k::llm
