#pragma once

#include <mutex>
#include <string>
#include <vector>

#include "f2k/llm/types.hpp"

namespace f2k::llm {

/// input_tokens * price_in / 1e6 + output_tokens * price_out / 1e6, in USD.
double compute_cost(const TokenUsage& usage, const ModelRef& model);

struct LedgerEntry {
  std::string role;
  std::string model;
  TokenUsage usage;
  double cost_usd = 0.0;
};

/// Append-only record of every completion. Safe for concurrent use.
class TokenLedger {
 public:
  /// Returns the index of the new entry.
  std::size_t record(LedgerEntry entry);

  TokenUsage total() const;
  double total_cost() const;
  std::size_t size() const;

  /// Usage and cost of entries [from, size()).
  TokenUsage usage_since(std::size_t from) const;
  double cost_since(std::size_t from) const;

  std::vector<LedgerEntry> entries() const;

 private:
  mutable std::mutex mutex_;
  std::vector<LedgerEntry> entries_;
};

}  // namespace f2k::llm
