#include "f2k/llm/gateway.hpp"

#include <cstdlib>
#include <thread>

#include "f2k/errors.hpp"
#include "f2k/text.hpp"

namespace f2k::llm {

std::string_view to_string(LlmMode mode) {
  switch (mode) {
    case LlmMode::live: return "live";
    case LlmMode::replay: return "replay";
    case LlmMode::record: return "record";
  }
  return "live";
}

LlmMode parse_llm_mode(std::string_view name) {
  const auto lower = text::to_lower(text::trim(name));
  if (lower == "live") return LlmMode::live;
  if (lower == "replay") return LlmMode::replay;
  if (lower == "record") return LlmMode::record;
  throw ConfigInvalid("unknown LLM mode '" + std::string(name) + "' (expected live|replay|record)");
}

std::optional<LlmMode> llm_mode_from_environment() {
  const char* v = std::getenv(kLlmModeEnv);
  if (!v || !*v) return std::nullopt;
  return parse_llm_mode(v);
}

Gateway::Gateway(LlmMode mode, std::shared_ptr<ChatProvider> live, std::optional<TranscriptStore> store,
                 RetryPolicy retry, Sleeper sleeper)
    : mode_(mode), live_(std::move(live)), store_(std::move(store)), retry_(retry), sleeper_(std::move(sleeper)) {
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (mode_ != LlmMode::live && !store_) throw ConfigInvalid("replay/record mode needs a transcript store");
  if (mode_ != LlmMode::replay && !live_) throw ConfigInvalid("live/record mode needs a provider");
  if (retry_.max_attempts < 1) throw ConfigInvalid("retry policy needs at least one attempt");
}

void Gateway::set_listener(Listener listener) {
  std::lock_guard lock(listener_mutex_);
  listener_ = std::move(listener);
}

CompletionResult Gateway::call_with_retry(const ModelRef& model, const ChatRequest& request) {
  auto backoff = retry_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return live_->complete(model, request);
    } catch (const ProviderUnavailable& e) {
      const bool retryable =
          dynamic_cast<const RateLimited*>(&e) != nullptr || dynamic_cast<const TransportError*>(&e) != nullptr;
      if (!retryable || attempt >= retry_.max_attempts) throw;
      sleeper_(backoff);
      backoff = std::chrono::milliseconds(static_cast<long long>(static_cast<double>(backoff.count()) * retry_.multiplier));
    }
  }
}

CompletionResult Gateway::complete(const ModelRef& model, std::string_view role, std::string_view system_prompt,
                                   std::string_view user_content) {
  if (text::trim(system_prompt).empty() || text::trim(user_content).empty())
    throw PreconditionViolation("complete: system prompt and user content must be non-empty");

  ChatRequest request{std::string(role), std::string(system_prompt), std::string(user_content)};
  const std::string key = replay_key(request);
  CompletionResult result;

  if (mode_ == LlmMode::replay) {
    auto t = store_->load(request);
    if (!t)
      throw ProviderUnavailable("replay store " + store_->directory().string() + " has no transcript for role '" +
                                request.role + "' (key " + key + ")");
    result.text = t->response;
    result.usage = t->usage;
    result.model = model.name;
    result.latency_seconds = 0.0;
  } else {
    result = call_with_retry(model, request);
    if (mode_ == LlmMode::record) store_->save({request.role, request.system, request.user, result.text, result.usage});
  }
  if (result.text.empty()) throw MalformedResponse("empty completion for role '" + request.role + "'");

  const double cost = compute_cost(result.usage, model);
  ledger_.record({request.role, model.name, result.usage, cost});

  Listener listener;
  {
    std::lock_guard lock(listener_mutex_);
    listener = listener_;
  }
  if (listener) listener(CompletionEvent{std::move(request), result, model, cost, key});
  return result;
}

}  // namespace f2k::llm
