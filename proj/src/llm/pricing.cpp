#include "f2k/llm/pricing.hpp"

#include "f2k/errors.hpp"

namespace f2k::llm {

void ModelRef::validate() const {
  if (name.empty()) throw ConfigInvalid("model name must not be empty");
  if (price_in_per_mtok < 0 || price_out_per_mtok < 0)
    throw ConfigInvalid("model '" + name + "': prices must be >= 0");
  if (!endpoint.starts_with("http://") && !endpoint.starts_with("https://"))
    throw ConfigInvalid("model '" + name + "': endpoint must be an http(s) URL");
}

double compute_cost(const TokenUsage& usage, const ModelRef& model) {
  // long double keeps token counts up to 2^64 exact before the scaling.
  const long double in = static_cast<long double>(usage.input_tokens) * model.price_in_per_mtok;
  const long double out = static_cast<long double>(usage.output_tokens) * model.price_out_per_mtok;
  return static_cast<double>((in + out) / 1.0e6L);
}

std::size_t TokenLedger::record(LedgerEntry entry) {
  std::lock_guard lock(mutex_);
  entries_.push_back(std::move(entry));
  return entries_.size() - 1;
}

TokenUsage TokenLedger::total() const { return usage_since(0); }

double TokenLedger::total_cost() const { return cost_since(0); }

std::size_t TokenLedger::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

TokenUsage TokenLedger::usage_since(std::size_t from) const {
  std::lock_guard lock(mutex_);
  TokenUsage u;
  for (std::size_t i = from; i < entries_.size(); ++i) u += entries_[i].usage;
  return u;
}

double TokenLedger::cost_since(std::size_t from) const {
  std::lock_guard lock(mutex_);
  double c = 0;
  for (std::size_t i = from; i < entries_.size(); ++i) c += entries_[i].cost_usd;
  return c;
}

std::vector<LedgerEntry> TokenLedger::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

}  // namespace f2k::llm
