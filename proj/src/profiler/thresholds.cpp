#include "f2k/profiler/thresholds.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "f2k/embedded.hpp"
#include "f2k/errors.hpp"
#include "f2k/text.hpp"

namespace f2k::profiler {
namespace {

std::optional<double> to_number(std::string_view s) {
  s = text::trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string unquote(std::string_view s) {
  s = text::trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

// Splits on commas outside double quotes.
std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  bool quoted = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == ',' && !quoted) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(line.substr(start));
  return out;
}

}  // namespace

std::vector<MetricThresholdRule> parse_rule_table(std::string_view csv) {
  std::vector<MetricThresholdRule> rules;
  std::size_t line_no = 0;
  bool first_row = true;
  for (const auto& line : text::split_lines(csv)) {
    ++line_no;
    const auto t = text::trim(line);
    if (t.empty() || t.starts_with('#')) continue;
    auto c1 = t.find(',');
    auto c2 = c1 == std::string_view::npos ? c1 : t.find(',', c1 + 1);
    auto c3 = c2 == std::string_view::npos ? c2 : t.find(',', c2 + 1);
    if (c3 == std::string_view::npos)
      throw ConfigInvalid(fmt::format("threshold rule line {}: expected metric,comparator,threshold,message", line_no));
    const auto name = text::trim(t.substr(0, c1));
    const auto cmp = text::trim(t.substr(c1 + 1, c2 - c1 - 1));
    const auto thr = to_number(t.substr(c2 + 1, c3 - c2 - 1));
    const auto msg = text::trim(t.substr(c3 + 1));
    const bool header = first_row && name == "metric" && !thr;
    first_row = false;
    if (header) continue;
    if (name.empty() || msg.empty())
      throw ConfigInvalid(fmt::format("threshold rule line {}: empty metric or message", line_no));
    if (cmp != "<" && cmp != ">")
      throw ConfigInvalid(fmt::format("threshold rule line {}: comparator must be < or >", line_no));
    if (!thr || !std::isfinite(*thr))
      throw ConfigInvalid(fmt::format("threshold rule line {}: threshold must be a finite number", line_no));
    rules.push_back({std::string(name), cmp == "<" ? Comparator::less : Comparator::greater, *thr, std::string(msg)});
  }
  return rules;
}

std::vector<MetricThresholdRule> load_rule_table(const std::filesystem::path& path) {
  return parse_rule_table(text::read_file(path));
}

std::vector<MetricThresholdRule> default_rule_table() {
  auto csv = embedded_file("rocprof_thresholds");
  if (!csv) throw ConfigInvalid("built-in threshold table missing");
  return parse_rule_table(*csv);
}

MetricMap parse_metric_dump(std::string_view dump) {
  MetricMap out;
  const auto t = text::trim(dump);
  if (t.empty()) return out;

  if (t.front() == '{') {
    const auto j = nlohmann::json::parse(t, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ParseError("metric dump: invalid JSON object");
    for (const auto& [k, v] : j.items())
      if (v.is_number()) out[k] = v.get<double>();
    return out;
  }

  const auto lines = text::split_lines(t);
  const auto header = split_csv(lines.front());
  std::optional<std::size_t> name_col, value_col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto h = unquote(header[i]);
    if (h == "Counter_Name") name_col = i;
    if (h == "Counter_Value") value_col = i;
  }

  if (name_col && value_col) {
    std::map<std::string, std::pair<double, int>, std::less<>> acc;
    for (std::size_t n = 1; n < lines.size(); ++n) {
      if (text::trim(lines[n]).empty()) continue;
      const auto cols = split_csv(lines[n]);
      if (cols.size() <= std::max(*name_col, *value_col)) throw ParseError(fmt::format("metric dump line {}: too few columns", n + 1));
      const auto v = to_number(cols[*value_col]);
      if (!v) throw ParseError(fmt::format("metric dump line {}: non-numeric counter value", n + 1));
      auto& [sum, count] = acc[unquote(cols[*name_col])];
      sum += *v;
      ++count;
    }
    for (const auto& [k, sc] : acc) out[k] = sc.first / sc.second;
    return out;
  }

  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto line = text::trim(lines[n]);
    if (line.empty() || line.starts_with('#')) continue;
    const auto cols = split_csv(line);
    if (cols.size() < 2) throw ParseError(fmt::format("metric dump line {}: expected name,value", n + 1));
    const auto v = to_number(cols[1]);
    if (!v) {
      if (n == 0) continue;  // header row
      throw ParseError(fmt::format("metric dump line {}: non-numeric value", n + 1));
    }
    out[unquote(cols[0])] = *v;
  }
  return out;
}

std::vector<std::string> evaluate_thresholds(const MetricMap& metrics, const std::vector<MetricThresholdRule>& rules) {
  std::vector<std::string> findings;
  for (const auto& rule : rules) {
    auto it = metrics.find(rule.metric_name);
    if (it == metrics.end() || std::isnan(it->second)) continue;
    const double v = it->second;
    const bool violated = rule.comparator == Comparator::less ? v < rule.threshold : v > rule.threshold;
    if (!violated) continue;
    findings.push_back(fmt::format("{} ({} = {:g}; expected {} {:g})", rule.diagnostic_text, rule.metric_name, v,
                                   rule.comparator == Comparator::less ? ">=" : "<=", rule.threshold));
  }
  return findings;
}

}  // namespace f2k::profiler
