#include "f2k/functest/compare.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "f2k/errors.hpp"

namespace f2k::functest {
namespace {

bool separator(char c) { return c == ',' || c == ';' || c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

std::string_view to_string(CompareRule rule) {
  return rule == CompareRule::nonzero ? "nonzero" : "elementwise_tol";
}

CompareRule rule_for(KernelId kernel) {
  return kernel == KernelId::EP ? CompareRule::nonzero : CompareRule::elementwise_tol;
}

std::vector<double> parse_capture_csv(std::string_view text) {
  std::vector<double> values;
  std::size_t i = 0;
  std::size_t line = 1;
  while (i < text.size()) {
    if (separator(text[i])) {
      if (text[i] == '\n') ++line;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !separator(text[j])) ++j;
    std::string token(text.substr(i, j - i));
    for (auto& c : token)
      if (c == 'D' || c == 'd') c = 'e';
    const char* first = token.data();
    if (*first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw ParseError(fmt::format("capture CSV line {}: '{}' is not a number", line, text.substr(i, j - i)));
    values.push_back(v);
    i = j;
  }
  if (values.empty()) throw ParseError("capture CSV holds no values");
  return values;
}

CompareResult compare_values(const std::vector<double>& a, const std::vector<double>& b, double tolerance,
                             CompareRule rule) {
  CompareResult r;
  r.values = a.size();
  if (rule == CompareRule::nonzero) {
    for (double v : a)
      if (std::abs(v) > 0) r.any_nonzero = true;
    r.pass = r.any_nonzero;
    return r;
  }
  if (a.size() != b.size())
    throw LengthMismatch(fmt::format("capture lengths differ: {} vs {} values", a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (std::isnan(d)) {
      r.max_abs_diff = d;
      break;
    }
    r.max_abs_diff = std::max(r.max_abs_diff, d);
  }
  r.pass = r.max_abs_diff <= tolerance;
  return r;
}

CompareResult compare_outputs(std::string_view csv_a, std::string_view csv_b, double tolerance, CompareRule rule) {
  const auto a = parse_capture_csv(csv_a);
  if (rule == CompareRule::nonzero) return compare_values(a, {}, tolerance, rule);
  return compare_values(a, parse_capture_csv(csv_b), tolerance, rule);
}

}  // namespace f2k::functest
