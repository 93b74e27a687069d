#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace f2k::profiler {

/// One optimization advisory from a report-style profiler.
struct OptPoint {
  std::string kernel_loop;  // kernel the block was reported under; may be empty
  std::string advisory_text;  // never empty
  std::optional<double> estimated_speedup;  // percent
};

/// Tokens that shape the report grammar. A line whose first token is one of
/// `open_markers` opens a block; the block closes at the next marker line,
/// section header, separator rule, kernel header or two consecutive blank lines.
struct OptGrammar {
  std::vector<std::string> open_markers{"OPT"};
  std::vector<std::string> other_markers{"WRN", "INF", "ERR"};
  std::vector<std::string> section_prefixes{"Section:", "==PROF=="};
  std::string speedup_keyword{"speedup"};  // matched case-insensitively
};

struct OptParseResult {
  std::vector<OptPoint> points;  // report order
  std::size_t skipped_blocks = 0;  // opened but without advisory text
};

/// Total: never throws, whatever the input.
OptParseResult parse_opt_report(std::string_view report, const OptGrammar& grammar = {});
std::vector<OptPoint> parse_opt_points(std::string_view report);

/// First `<number>%` following the speedup keyword, if any.
std::optional<double> extract_speedup(std::string_view text, std::string_view keyword = "speedup");

}  // namespace f2k::profiler
