#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace zsc {

std::string to_lower(std::string_view text);
std::string trim(std::string_view text);
bool has_alpha(std::string_view text);

/// Replaces every occurrence of `key` in `text`.
std::string replace_all(std::string text, std::string_view key, std::string_view value);

/// Lowercase, trim, strip leading articles ("a", "an", "the") and
/// trailing punctuation. Inner whitespace runs collapse to one space.
std::string normalize_label(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace zsc
