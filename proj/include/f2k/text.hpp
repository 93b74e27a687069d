#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace f2k::text {

using Substitutions = std::map<std::string, std::string, std::less<>>;

std::string_view trim(std::string_view s);
std::string_view trim_left(std::string_view s);
std::string_view trim_right(std::string_view s);

bool starts_with_ci(std::string_view s, std::string_view prefix);
std::string to_lower(std::string_view s);

/// Splits on '\n', dropping a trailing '\r' from each line. A trailing newline
/// does not produce an empty final line.
std::vector<std::string> split_lines(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Keeps the first `max_lines` lines of `s`.
std::string clamp_lines(std::string_view s, std::size_t max_lines);
std::size_t count_lines(std::string_view s);

/// Names of `{identifier}` placeholders in order of first appearance.
/// Identifiers are lowercase ASCII letters, digits and '_', starting with a letter.
std::vector<std::string> placeholders(std::string_view tmpl);

/// Single-pass `{key}` substitution. Substituted values are not rescanned.
/// Throws UnresolvedPlaceholder naming the first key without a value.
std::string expand(std::string_view tmpl, const Substitutions& values);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

std::string sha256_hex(std::string_view data);

/// Replaces every occurrence of `from` with `to`.
std::string replace_all(std::string s, std::string_view from, std::string_view to);

}  // namespace f2k::text
