#pragma once

#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers shared by the corpus parser, the question classifiers and the
// vocabulary scorer. No Unicode normalization is ever applied.
namespace mcqg::text {

// Decodes one code point starting at `pos` and advances `pos`. Invalid bytes
// decode as themselves (one byte) so malformed input never throws.
char32_t decode_utf8(std::string_view s, std::size_t& pos) noexcept;

bool is_unicode_space(char32_t cp) noexcept;
bool is_punctuation(char32_t cp) noexcept;

// Strips leading and trailing Unicode whitespace.
std::string_view trim(std::string_view s) noexcept;

// ASCII-only lower-casing; non-ASCII bytes pass through untouched.
std::string to_lower_ascii(std::string_view s);

// Splits on Unicode whitespace, strips leading/trailing punctuation from each
// token, lower-cases, and drops tokens that end up empty.
std::vector<std::string> tokenize(std::string_view s);

}  // namespace mcqg::text
