#include "generators.hpp"

#include <fmt/format.h>

namespace f2k::testing {

// Corpus of model-reply shapes: prose, fences with and without tags, other
// languages, nested and unterminated fences.
std::vector<std::string> reply_corpus(std::size_t count) {
  std::mt19937 rng(20250917);
  const std::vector<std::string> pieces = {
      "Here is the code:\n", "```cpp\nint main() { return 0; }\n```\n", "```\nvoid f();\n```\n",
      "```python\nprint('x')\n```\n", "Some explanation.\n", "```c++\n#include <x>\n```\n",
      "  ```cpp\n  indented();\n  ```\n", "```cpp\nunterminated(\n", "```\n```\n", "\n\n",
      "text with ``` inside\n", "```bash\nmake\n```\n", "```kokkos\nKokkos::fence();\n```\n",
      "```cpp\n```cpp\nnested();\n```\n```\n", "   \t\n"};
  std::vector<std::string> out;
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 5);
  while (out.size() < count) {
    std::string s;
    for (int i = len(rng); i > 0; --i) s += pieces[pick(rng)];
    out.push_back(s);
  }
  return out;
}

// Kokkos-like source with exactly one live anchor. Other lines may mention
// the anchor inside // comments, which must not count.
std::string generated_source(std::mt19937& rng) {
  const std::vector<std::string> filler = {
      "#include <Kokkos_Core.hpp>",
      "int main(int argc, char** argv) {",
      "Kokkos::View<double*> x(\"x\", n);",
      "Kokkos::parallel_for(n, KOKKOS_LAMBDA(int i) { x(i) = 2.0 * i; });",
      "// Kokkos::fence() is called once below",
      "double sum = 0.0;  // no Kokkos::fence() here",
      "",
      "  ",
      "for (int r = 0; r < reps; ++r) {",
      "}",
      "std::printf(\"Kernel time: %.6f s\\n\", t);",
      "/* block comment */",
  };
  std::uniform_int_distribution<std::size_t> pick(0, filler.size() - 1);
  std::uniform_int_distribution<int> count(0, 12);
  std::uniform_int_distribution<int> indent(0, 6);
  std::uniform_int_distribution<int> coin(0, 1);
  const auto line = [&] { return std::string(static_cast<std::size_t>(indent(rng)), ' ') + filler[pick(rng)]; };
  std::string s;
  for (int i = count(rng); i > 0; --i) s += line() + "\n";
  const std::string anchor_forms[] = {"Kokkos::fence();", "Kokkos::fence();  // sync", "Kokkos::fence(); x(0) = 1;"};
  s += std::string(static_cast<std::size_t>(indent(rng)), coin(rng) ? ' ' : '\t') + anchor_forms[count(rng) % 3];
  const int after = count(rng);
  if (after == 0 && coin(rng)) return s;  // anchor on an unterminated last line
  s += "\n";
  for (int i = after; i > 0; --i) s += line() + "\n";
  if (coin(rng) && !s.empty()) s.pop_back();  // sometimes no trailing newline
  return s;
}

std::string fuzz_text(std::mt19937& rng) {
  const std::vector<std::string> tokens = {"OPT", "OPT ", "  OPT   ", "WRN", "INF", "Section:", "==PROF==", "---",
                                           "Est. Speedup:", "speedup", "%", "25%", "1e999%", "-3%", "nan%",
                                           ", Context 1, Device 0", "\n", "\n\n", "\n\n\n", "\t", "\r\n", "x",
                                           "\xff\xfe", std::string(1, '\0'), "OPT\n", "   Est. Speedup: 12.5%\n"};
  std::uniform_int_distribution<std::size_t> pick(0, tokens.size() - 1);
  std::uniform_int_distribution<int> len(0, 60);
  std::string s;
  for (int i = len(rng); i > 0; --i) s += tokens[pick(rng)];
  return s;
}

std::string random_log(std::mt19937& rng) {
  std::uniform_int_distribution<int> lines(1, 2000);
  std::uniform_int_distribution<int> kind(0, 3);
  std::string log;
  const int n = lines(rng);
  for (int i = 0; i < n; ++i) {
    switch (kind(rng)) {
      case 0: log += fmt::format("src.cpp:{}:{}: error: expected ';' before '}}' token\n", i + 1, i % 80); break;
      case 1: log += fmt::format("  {} | Kokkos::parallel_for(n, KOKKOS_LAMBDA(int i) {{\n", i + 1); break;
      case 2: log += "      |                                ^~~~~~~~\n"; break;
      default: log += fmt::format("note: candidate {} not viable\n", i); break;
    }
  }
  return log;
}

}  // namespace f2k::testing
