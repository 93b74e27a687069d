#include "f2k/profiler/opt_report.hpp"

#include <cctype>
#include <charconv>

#include "f2k/text.hpp"

namespace f2k::profiler {
namespace {

std::string_view first_token(std::string_view line) {
  line = text::trim_left(line);
  std::size_t n = 0;
  while (n < line.size() && !std::isspace(static_cast<unsigned char>(line[n]))) ++n;
  return line.substr(0, n);
}

bool is_rule(std::string_view trimmed) {
  std::size_t dashes = 0;
  for (char c : trimmed) {
    if (c == '-') {
      ++dashes;
    } else if (c != ' ' && c != '\t') {
      return false;
    }
  }
  return dashes >= 3;
}

// "  matmul(float*, int) (64, 1, 1)x(256, 1, 1), Context 1, Stream 7, Device 0, CC 8.0"
bool is_kernel_header(std::string_view trimmed) {
  return trimmed.find(", Context ") != std::string_view::npos && trimmed.find("Device") != std::string_view::npos;
}

std::string kernel_name(std::string_view header) {
  // Keep the signature; drop launch geometry and the context tail.
  auto cut = header.find(", Context ");
  auto name = text::trim(header.substr(0, cut));
  auto grid = name.find(")x(");
  if (grid != std::string_view::npos) {
    auto open = name.rfind(" (", grid);
    if (open != std::string_view::npos) name = text::trim(name.substr(0, open));
  }
  return std::string(name);
}

bool contains(const std::vector<std::string>& list, std::string_view tok) {
  for (const auto& s : list)
    if (s == tok) return true;
  return false;
}

bool starts_with_any(std::string_view trimmed, const std::vector<std::string>& prefixes) {
  for (const auto& p : prefixes)
    if (!p.empty() && trimmed.starts_with(p)) return true;
  return false;
}

}  // namespace

std::optional<double> extract_speedup(std::string_view text, std::string_view keyword) {
  if (keyword.empty()) return std::nullopt;
  const std::string lower = text::to_lower(text);
  const std::string key = text::to_lower(keyword);
  std::size_t at = lower.find(key);
  while (at != std::string::npos) {
    std::size_t i = at + key.size();
    while (i < lower.size() && !std::isdigit(static_cast<unsigned char>(lower[i])) && lower[i] != '\n') ++i;
    std::size_t end = i;
    while (end < lower.size() && (std::isdigit(static_cast<unsigned char>(lower[end])) || lower[end] == '.')) ++end;
    std::size_t pct = end;
    while (pct < lower.size() && lower[pct] == ' ') ++pct;
    if (end > i && pct < lower.size() && lower[pct] == '%') {
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(lower.data() + i, lower.data() + end, value);
      if (ec == std::errc() && ptr == lower.data() + end) return value;
    }
    at = lower.find(key, at + key.size());
  }
  return std::nullopt;
}

OptParseResult parse_opt_report(std::string_view report, const OptGrammar& grammar) {
  OptParseResult out;
  std::string kernel;
  bool open = false;
  std::vector<std::string> body;
  int blank_run = 0;

  auto close = [&] {
    if (!open) return;
    open = false;
    std::string advisory;
    for (const auto& part : body) {
      if (part.empty()) continue;
      if (!advisory.empty()) advisory += ' ';
      advisory += part;
    }
    body.clear();
    if (advisory.empty()) {
      ++out.skipped_blocks;
      return;
    }
    auto speedup = extract_speedup(advisory, grammar.speedup_keyword);
    out.points.push_back({kernel, std::move(advisory), speedup});
  };

  for (const auto& line : text::split_lines(report)) {
    const auto trimmed = text::trim(line);
    if (trimmed.empty()) {
      if (open && ++blank_run >= 2) close();
      continue;
    }
    blank_run = 0;
    const auto tok = first_token(trimmed);
    if (contains(grammar.open_markers, tok)) {
      close();
      open = true;
      body.emplace_back(text::trim(trimmed.substr(tok.size())));
    } else if (contains(grammar.other_markers, tok) || starts_with_any(trimmed, grammar.section_prefixes) ||
               is_rule(trimmed)) {
      close();
    } else if (is_kernel_header(trimmed)) {
      close();
      kernel = kernel_name(trimmed);
    } else if (open) {
      body.emplace_back(trimmed);
    }
  }
  close();
  return out;
}

std::vector<OptPoint> parse_opt_points(std::string_view report) { return parse_opt_report(report).points; }

}  // namespace f2k::profiler
