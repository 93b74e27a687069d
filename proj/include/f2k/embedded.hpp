#pragma once

#include <optional>
#include <string_view>

namespace f2k {

/// Text files compiled into the library (prompt templates, default rule
/// tables), looked up by file name without extension.
std::optional<std::string_view> embedded_file(std::string_view name);

}  // namespace f2k
