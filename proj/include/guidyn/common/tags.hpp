#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace guidyn {

// Body of the single <name>...</name> element in `text`. Empty optional when the open or
// close tag is missing, repeated, or out of order.
std::optional<std::string> single_tag(std::string_view text, std::string_view name);

// Number of occurrences of `needle` in `text`.
std::size_t count_occurrences(std::string_view text, std::string_view needle);

// Leading and trailing ASCII whitespace removed.
std::string trim(std::string_view text);

// Trimmed, with each internal whitespace run collapsed to one space.
std::string collapse_whitespace(std::string_view text);

}  // namespace guidyn
