#include "f2k/llm/code_block.hpp"

#include <array>

#include "f2k/text.hpp"

namespace f2k::llm {
namespace {

constexpr std::string_view kFence = "```";

struct Line {
  std::size_t begin;  // offset of first char
  std::size_t end;    // offset one past the last char, excluding '\n'
};

bool is_cpp_tag(std::string_view tag) {
  static constexpr std::array<std::string_view, 7> kTags = {"", "cpp", "c++", "cxx", "cc", "hpp", "kokkos"};
  const auto lower = text::to_lower(tag);
  for (auto t : kTags)
    if (lower == t) return true;
  return false;
}

}  // namespace

bool contains_fence_marker(std::string_view s) {
  for (const auto& line : text::split_lines(s)) {
    if (text::trim_left(line).starts_with(kFence)) return true;
  }
  return false;
}

std::string extract_code_block(std::string_view raw) {
  std::vector<Line> lines;
  for (std::size_t start = 0; start <= raw.size();) {
    std::size_t nl = raw.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back({start, raw.size()});
      break;
    }
    lines.push_back({start, nl});
    start = nl + 1;
  }

  auto content = [&](const Line& l) { return text::trim(raw.substr(l.begin, l.end - l.begin)); };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto opener = content(lines[i]);
    if (!opener.starts_with(kFence)) continue;
    auto tag = text::trim(opener.substr(kFence.size()));
    // A run of backticks longer than the fence, or text after the tag, is not an opener we understand.
    if (tag.find('`') != std::string_view::npos) continue;

    std::size_t close = lines.size();
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (content(lines[j]) == kFence) {
        close = j;
        break;
      }
    }
    if (close == lines.size()) break;  // unterminated: no complete block anywhere after this
    if (is_cpp_tag(tag)) {
      const std::size_t begin = lines[i].end < raw.size() ? lines[i].end + 1 : raw.size();
      const std::size_t end = lines[close].begin;
      return std::string(text::trim(raw.substr(begin, end > begin ? end - begin : 0)));
    }
    i = close;  // skip the foreign-language block
  }
  return std::string(text::trim(raw));
}

}  // namespace f2k::llm
