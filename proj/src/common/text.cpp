#include "zsc/common/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "zsc/common/error.hpp"

namespace zsc {

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view text) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  std::size_t b = 0, e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return std::string(text.substr(b, e - b));
}

bool has_alpha(std::string_view text) {
  return std::any_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isalpha(c) != 0; });
}

std::string replace_all(std::string text, std::string_view key, std::string_view value) {
  if (key.empty()) return text;
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

std::string normalize_label(std::string_view text) {
  std::istringstream in(to_lower(text));
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);

  auto is_punct = [](unsigned char c) { return std::ispunct(c) != 0; };
  while (!words.empty()) {
    auto& last = words.back();
    while (!last.empty() && is_punct(last.back())) last.pop_back();
    if (!last.empty()) break;
    words.pop_back();
  }
  std::size_t first = 0;
  while (first + 1 < words.size() &&
         (words[first] == "a" || words[first] == "an" || words[first] == "the"))
    ++first;

  std::string out;
  for (std::size_t i = first; i < words.size(); ++i) {
    if (!out.empty()) out.push_back(' ');
    out += words[i];
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Input, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Input, "cannot write file: " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace zsc
