#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace f2k::agents {

struct ValidationVerdict {
  bool is_valid = true;
  std::vector<std::string> issues;  // empty iff is_valid
};

/// Token-free pre-check run before asking the Validator model. Rejects:
///   - fence markers ("markdown fence")
///   - markdown headings
///   - natural-language lines outside comments and string literals
///   - unbalanced (), [] or {} outside comments and literals
ValidationVerdict structural_check(std::string_view source);

}  // namespace f2k::agents
