#include "f2k/agents/structural_check.hpp"

#include <array>
#include <cctype>

#include <fmt/format.h>

#include "f2k/text.hpp"

namespace f2k::agents {
namespace {

enum class LexState { code, line_comment, block_comment, string, character, raw_string };

struct LineView {
  std::string code;  // everything on the line except comment text
  bool has_comment = false;
};

bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

constexpr std::array<std::string_view, 13> kDirectives = {"include", "define", "if",     "ifdef",   "ifndef",
                                                          "else",    "elif",   "endif",  "pragma",  "error",
                                                          "warning", "undef",  "line"};

bool is_preprocessor(std::string_view trimmed) {
  if (!trimmed.starts_with('#')) return false;
  auto rest = text::trim_left(trimmed.substr(1));
  if (rest.empty()) return true;  // null directive
  std::size_t n = 0;
  while (n < rest.size() && is_ident(rest[n])) ++n;
  auto word = rest.substr(0, n);
  for (auto d : kDirectives)
    if (word == d) return true;
  return false;
}

bool is_word(std::string_view tok) {
  while (!tok.empty() && std::string_view(".,:!?").find(tok.back()) != std::string_view::npos) tok.remove_suffix(1);
  if (tok.empty()) return false;
  for (char c : tok) {
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '\'' && c != '-') return false;
  }
  return true;
}

bool looks_like_prose(std::string_view code) {
  auto t = text::trim(code);
  if (t.empty() || t.starts_with('#')) return false;
  if (t.find_first_of(";{}()[]=<>+*/&|^%~\"#") != std::string_view::npos) return false;
  std::size_t words = 0;
  std::size_t pos = 0;
  while (pos < t.size()) {
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
    std::size_t end = pos;
    while (end < t.size() && !std::isspace(static_cast<unsigned char>(t[end]))) ++end;
    if (end > pos) {
      if (!is_word(t.substr(pos, end - pos))) return false;
      ++words;
    }
    pos = end;
  }
  const bool sentence_end = std::string_view(".:!?").find(t.back()) != std::string_view::npos;
  return words >= 5 || (words >= 3 && sentence_end);
}

}  // namespace

ValidationVerdict structural_check(std::string_view source) {
  ValidationVerdict v;
  auto add = [&v](std::string issue) {
    v.is_valid = false;
    v.issues.push_back(std::move(issue));
  };
  if (text::trim(source).empty()) {
    add("empty source");
    return v;
  }

  std::vector<LineView> lines(1);
  std::vector<char> stack;
  std::string raw_delim;
  bool unbalanced = false;
  LexState state = LexState::code;

  for (std::size_t i = 0; i < source.size(); ++i) {
    const char c = source[i];
    const char next = i + 1 < source.size() ? source[i + 1] : '\0';
    if (c == '\n') {
      if (state == LexState::line_comment || state == LexState::string || state == LexState::character)
        state = LexState::code;
      lines.emplace_back();
      continue;
    }
    auto& line = lines.back();
    switch (state) {
      case LexState::code:
        if (c == '/' && next == '/') {
          state = LexState::line_comment;
          line.has_comment = true;
          ++i;
        } else if (c == '/' && next == '*') {
          state = LexState::block_comment;
          line.has_comment = true;
          ++i;
        } else if (c == 'R' && next == '"' && (i == 0 || !is_ident(source[i - 1]) || source[i - 1] == '8' ||
                                                source[i - 1] == 'u' || source[i - 1] == 'U' || source[i - 1] == 'L')) {
          const auto open = source.find('(', i + 2);
          if (open == std::string_view::npos) {
            line.code += c;
            break;
          }
          raw_delim = ")" + std::string(source.substr(i + 2, open - i - 2)) + "\"";
          line.code += source.substr(i, open - i + 1);
          state = LexState::raw_string;
          i = open;
        } else if (c == '"') {
          state = LexState::string;
          line.code += c;
        } else if (c == '\'' && !(i > 0 && std::isdigit(static_cast<unsigned char>(source[i - 1])))) {
          // a quote after a digit is a digit separator (1'000'000)
          state = LexState::character;
          line.code += c;
        } else {
          line.code += c;
          if (c == '(' || c == '[' || c == '{') {
            stack.push_back(c);
          } else if (c == ')' || c == ']' || c == '}') {
            const char want = c == ')' ? '(' : c == ']' ? '[' : '{';
            if (stack.empty() || stack.back() != want) {
              unbalanced = true;
            } else {
              stack.pop_back();
            }
          }
        }
        break;
      case LexState::line_comment:
        break;
      case LexState::block_comment:
        line.has_comment = true;
        if (c == '*' && next == '/') {
          state = LexState::code;
          ++i;
        }
        break;
      case LexState::string:
      case LexState::character:
        line.code += c;
        if (c == '\\' && next != '\n' && next != '\0') {
          line.code += next;
          ++i;
        } else if ((state == LexState::string && c == '"') || (state == LexState::character && c == '\'')) {
          state = LexState::code;
        }
        break;
      case LexState::raw_string:
        line.code += c;
        if (source.substr(i, raw_delim.size()) == raw_delim) {
          line.code += source.substr(i + 1, raw_delim.size() - 1);
          i += raw_delim.size() - 1;
          state = LexState::code;
        }
        break;
    }
  }

  for (const auto& raw_line : text::split_lines(source)) {
    if (text::trim_left(raw_line).starts_with("```")) {
      add("markdown fence");
      break;
    }
  }

  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto trimmed = text::trim(lines[n].code);
    if (trimmed.starts_with('#') && !is_preprocessor(trimmed)) {
      add(fmt::format("markdown heading on line {}", n + 1));
    } else if (looks_like_prose(lines[n].code)) {
      add(fmt::format("natural-language text outside comments on line {}: {}", n + 1, trimmed));
    }
  }

  if (state == LexState::block_comment) add("unterminated block comment");
  if (unbalanced || !stack.empty()) add("unbalanced braces");
  return v;
}

}  // namespace f2k::agents
