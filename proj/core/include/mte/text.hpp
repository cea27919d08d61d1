#ifndef MTE_TEXT_HPP
#define MTE_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace mte {

/// Split a UTF-8 string into single code-point substrings.
/// MSD "characters" (category and value codes) are code points, not bytes,
/// so localised codes outside ASCII work throughout.
std::vector<std::string> utf8_chars(std::string_view s);

/// Number of code points in a UTF-8 string.
size_t utf8_length(std::string_view s);

std::string_view trim(std::string_view s);

/// Split on a single separator character; empty fields preserved.
std::vector<std::string> split(std::string_view s, char sep);

/// Split on runs of ASCII whitespace; no empty fields.
std::vector<std::string> split_ws(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string to_lower_ascii(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);

/// Document-order comparison of dotted identifiers such as "Osl.1.2.2.1":
/// segment-wise, numeric segments numerically, others lexicographically,
/// shorter prefix first.
bool dotted_id_less(std::string_view a, std::string_view b);

} // namespace mte

#endif
