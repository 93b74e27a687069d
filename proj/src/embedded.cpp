#include "f2k/embedded.hpp"

namespace f2k {
namespace {

struct EmbeddedFile {
  std::string_view name;
  std::string_view text;
};

constexpr EmbeddedFile kFiles[] = {
#include "f2k/embedded_files.inc"
};

}  // namespace

std::optional<std::string_view> embedded_file(std::string_view name) {
  for (const auto& f : kFiles)
    if (f.name == name) return f.text;
  return std::nullopt;
}

}  // namespace f2k
