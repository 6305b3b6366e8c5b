#pragma once

#include <string_view>

namespace zsc {

/// Text asset compiled into the binary, by path relative to assets/
/// (e.g. "prompts/caption.txt"). Throws Error{Input} for unknown names.
std::string_view asset(std::string_view name);

}  // namespace zsc
