#pragma once

#include <cstdint>
#include <string>

namespace f2k::llm {

/// A chat-completion endpoint and its per-million-token prices.
struct ModelRef {
  std::string name;
  std::string endpoint;  // base URL, e.g. https://api.openai.com/v1
  double price_in_per_mtok = 0.0;
  double price_out_per_mtok = 0.0;
  /// Environment variable holding the bearer token; empty means no auth header.
  std::string api_key_env;

  /// Throws ConfigInvalid for negative prices or a non-http(s) endpoint.
  void validate() const;
};

struct TokenUsage {
  std::uint64_t input_tokens = 0;
  std::uint64_t output_tokens = 0;

  TokenUsage& operator+=(const TokenUsage& o) {
    input_tokens += o.input_tokens;
    output_tokens += o.output_tokens;
    return *this;
  }
  friend TokenUsage operator+(TokenUsage a, const TokenUsage& b) { return a += b; }
  friend bool operator==(const TokenUsage&, const TokenUsage&) = default;
};

struct CompletionResult {
  std::string text;
  TokenUsage usage;
  std::string model;
  double latency_seconds = 0.0;
};

struct ChatRequest {
  std::string role;  // agent role name; part of the replay key
  std::string system;
  std::string user;
};

/// Transport to one family of endpoints. Implementations raise TransportError
/// or RateLimited for retryable failures, plain ProviderUnavailable for other
/// HTTP errors and MalformedResponse for bodies that cannot be understood.
class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  virtual CompletionResult complete(const ModelRef& model, const ChatRequest& request) = 0;
};

}  // namespace f2k::llm
