#pragma once

#include <string>
#include <string_view>

namespace f2k::llm {

/// Pulls compilable C++ out of a model reply.
///
/// The first complete fenced block whose info string is a C++ tag
/// (cpp, c++, cxx, cc, hpp, kokkos) or empty wins; blocks tagged with another language
/// are skipped. Its interior is returned with surrounding whitespace trimmed.
/// Without such a block the whole reply is returned trimmed. A closing fence
/// is a line holding only ``` (indentation allowed).
///
/// extract_code_block(extract_code_block(x)) == extract_code_block(x).
std::string extract_code_block(std::string_view raw);

/// True when any line starts (after indentation) with ```.
bool contains_fence_marker(std::string_view text);

}  // namespace f2k::llm
