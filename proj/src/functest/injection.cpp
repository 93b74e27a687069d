#include "f2k/functest/injection.hpp"

#include <vector>

#include <fmt/format.h>

#include "f2k/errors.hpp"
#include "f2k/text.hpp"

namespace f2k::functest {
namespace {

struct Line {
  std::size_t begin;  // offset of first character
  std::size_t end;  // offset one past the '\n', or size() on the last line
  std::string_view body;  // without '\n'
};

std::vector<Line> lines_of(std::string_view s) {
  std::vector<Line> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto nl = s.find('\n', pos);
    const std::size_t stop = nl == std::string_view::npos ? s.size() : nl;
    out.push_back({pos, nl == std::string_view::npos ? s.size() : nl + 1, s.substr(pos, stop - pos)});
    pos = out.back().end;
  }
  return out;
}

bool is_marker(std::string_view line, std::string_view marker) { return text::trim(line) == marker; }

// Occurrences of `anchor` in `line` before any // comment.
std::size_t count_in_code(std::string_view line, std::string_view anchor) {
  const auto comment = line.find("//");
  const auto code = line.substr(0, comment);
  std::size_t n = 0;
  for (auto at = code.find(anchor); at != std::string_view::npos; at = code.find(anchor, at + anchor.size())) ++n;
  return n;
}

std::string block(std::string_view indent, std::string_view body) {
  std::string out = std::string(indent) + std::string(kCaptureBegin) + "\n";
  for (const auto& l : text::split_lines(body)) out += (l.empty() ? "" : std::string(indent)) + l + "\n";
  out += std::string(indent) + std::string(kCaptureEnd) + "\n";
  return out;
}

}  // namespace

std::string_view default_capture_array(KernelId kernel) {
  switch (kernel) {
    case KernelId::CG: return "x";
    case KernelId::EP: return "q";
    case KernelId::MG: return "u";
    case KernelId::FT: return "sums";
    case KernelId::DGEMM: return "C";
    case KernelId::custom: return "result";
  }
  return "result";
}

std::string capture_snippet(std::string_view array, std::string_view csv_name) {
  return fmt::format(
      "{{\n"
      "  auto f2k_capture_host = Kokkos::create_mirror_view_and_copy(Kokkos::HostSpace(), {0});\n"
      "  std::ofstream f2k_capture_out(\"{1}\");\n"
      "  f2k_capture_out << std::setprecision(17);\n"
      "  for (std::size_t f2k_i = 0; f2k_i < f2k_capture_host.span(); ++f2k_i)\n"
      "    f2k_capture_out << f2k_capture_host.data()[f2k_i] << '\\n';\n"
      "}}\n",
      array, csv_name);
}

InjectionSpec default_injection_spec(KernelId kernel, std::string_view array) {
  InjectionSpec spec;
  spec.kernel = kernel;
  spec.capture_snippet = capture_snippet(array.empty() ? default_capture_array(kernel) : array, spec.output_csv_name);
  return spec;
}

bool has_capture_markers(std::string_view source) {
  for (const auto& l : lines_of(source))
    if (is_marker(l.body, kCaptureBegin) || is_marker(l.body, kCaptureEnd)) return true;
  return false;
}

std::string inject_capture(std::string_view source, const InjectionSpec& spec) {
  if (spec.anchor.empty()) throw PreconditionViolation("injection anchor is empty");
  if (has_capture_markers(source)) throw PreconditionViolation("source already contains capture markers");

  const auto lines = lines_of(source);
  std::size_t hits = 0;
  const Line* anchor = nullptr;
  for (const auto& l : lines) {
    if (const auto n = count_in_code(l.body, spec.anchor)) {
      hits += n;
      anchor = &l;
    }
  }
  if (hits == 0) throw AnchorMissing("anchor '" + spec.anchor + "' not found");
  if (hits > 1) throw AnchorAmbiguous(fmt::format("anchor '{}' occurs {} times", spec.anchor, hits));

  const auto indent = anchor->body.substr(0, anchor->body.find_first_not_of(" \t"));
  std::string snippet = block(indent, spec.capture_snippet);

  std::string out = block("", "#include <fstream>\n#include <iomanip>");
  out.append(source.substr(0, anchor->end));
  if (anchor->end == source.size() && (source.empty() || source.back() != '\n')) {
    // The anchor is on an unterminated last line; keep the file unterminated too.
    snippet.pop_back();
    out += '\n';
  }
  out += snippet;
  out.append(source.substr(anchor->end));
  return out;
}

std::string strip_injection(std::string_view source) {
  const auto lines = lines_of(source);
  std::string out;
  std::size_t copied = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_marker(lines[i].body, kCaptureEnd))
      throw UnbalancedMarkers(fmt::format("capture end marker without begin on line {}", i + 1));
    if (!is_marker(lines[i].body, kCaptureBegin)) continue;
    std::size_t j = i + 1;
    while (j < lines.size() && !is_marker(lines[j].body, kCaptureEnd)) {
      if (is_marker(lines[j].body, kCaptureBegin))
        throw UnbalancedMarkers(fmt::format("nested capture begin marker on line {}", j + 1));
      ++j;
    }
    if (j == lines.size()) throw UnbalancedMarkers(fmt::format("capture begin marker on line {} is never closed", i + 1));
    std::size_t cut = lines[i].begin;
    const bool unterminated = lines[j].end == source.size() && source.back() != '\n';
    if (unterminated && cut > copied) --cut;  // drop the newline added before the block
    out.append(source.substr(copied, cut - copied));
    copied = lines[j].end;
    i = j;
  }
  out.append(source.substr(copied));
  return out;
}

}  // namespace f2k::functest
