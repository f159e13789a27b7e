#pragma once
// UTF-8 helpers used by the lexicon and the response renderer.

#include <string>
#include <string_view>
#include <vector>

namespace pidgin::text {

// Lowercases alphabetic characters (Latin, Greek, Cyrillic); digits,
// symbols and undecodable bytes pass through unchanged.
std::string fold_case(std::string_view s);

// Uppercases the first code point only.
std::string capitalize(std::string_view s);

std::string trim(std::string_view s);

// Splits on '\n'; a trailing "\r" is stripped from every piece.
std::vector<std::string> split_lines(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace pidgin::text
