#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace f2k::profiler {

enum class Comparator { less, greater };

struct MetricThresholdRule {
  std::string metric_name;
  Comparator comparator;
  double threshold;  // finite
  std::string diagnostic_text;
};

using MetricMap = std::map<std::string, double, std::less<>>;

/// `metric,comparator,threshold,message` rows; '#' lines and blank lines are
/// ignored, the message may itself contain commas. Throws ConfigInvalid.
std::vector<MetricThresholdRule> parse_rule_table(std::string_view csv);
std::vector<MetricThresholdRule> load_rule_table(const std::filesystem::path& path);
/// The table shipped with the library.
std::vector<MetricThresholdRule> default_rule_table();

/// Counter dump from a counter-style profiler: a JSON object of numbers,
/// `name,value` rows, or a CSV with Counter_Name/Counter_Value columns (values
/// of a repeated counter are averaged). Throws ParseError.
MetricMap parse_metric_dump(std::string_view text);

/// One finding per violated rule, in rule order. A metric absent from
/// `metrics`, or NaN, violates nothing.
std::vector<std::string> evaluate_thresholds(const MetricMap& metrics, const std::vector<MetricThresholdRule>& rules);

}  // namespace f2k::profiler
