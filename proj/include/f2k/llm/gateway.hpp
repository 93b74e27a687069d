#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "f2k/llm/pricing.hpp"
#include "f2k/llm/transcript_store.hpp"
#include "f2k/llm/types.hpp"

namespace f2k::llm {

enum class LlmMode { live, replay, record };

std::string_view to_string(LlmMode mode);
LlmMode parse_llm_mode(std::string_view name);  // throws ConfigInvalid

inline constexpr const char* kLlmModeEnv = "PIPELINE_LLM_MODE";

/// Reads PIPELINE_LLM_MODE; nullopt when unset or empty.
std::optional<LlmMode> llm_mode_from_environment();

/// Retries transport failures and 429s only.
struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  double multiplier = 2.0;
};

struct CompletionEvent {
  ChatRequest request;
  CompletionResult result;
  ModelRef model;
  double cost_usd = 0.0;
  std::string replay_key;
};

/// Single entry point for model calls: picks live / replay / record routing,
/// applies the retry policy and charges every completion to the ledger.
class Gateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;
  using Listener = std::function<void(const CompletionEvent&)>;

  /// `live` may be null in replay mode; `store` is required for replay and record.
  Gateway(LlmMode mode, std::shared_ptr<ChatProvider> live, std::optional<TranscriptStore> store,
          RetryPolicy retry = {}, Sleeper sleeper = {});

  /// Throws PreconditionViolation for empty prompts, ProviderUnavailable when
  /// the provider (or, in replay mode, the store) cannot answer.
  CompletionResult complete(const ModelRef& model, std::string_view role, std::string_view system_prompt,
                            std::string_view user_content);

  void set_listener(Listener listener);

  LlmMode mode() const { return mode_; }
  TokenLedger& ledger() { return ledger_; }
  const TokenLedger& ledger() const { return ledger_; }

 private:
  CompletionResult call_with_retry(const ModelRef& model, const ChatRequest& request);

  LlmMode mode_;
  std::shared_ptr<ChatProvider> live_;
  std::optional<TranscriptStore> store_;
  RetryPolicy retry_;
  Sleeper sleeper_;
  TokenLedger ledger_;
  std::mutex listener_mutex_;
  Listener listener_;
};

}  // namespace f2k::llm
