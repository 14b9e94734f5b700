#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wordvec {

// A decoded Unicode scalar value together with where it sits in the source.
struct CodePoint {
  char32_t value;
  std::size_t offset;  // byte offset of the first code unit
  std::size_t length;  // number of UTF-8 bytes
};

// Throws DecodeError with the offending byte offset on malformed input.
std::vector<CodePoint> decode_utf8(std::string_view text);

// Throws DecodeError if `text` is not well-formed UTF-8.
void validate_utf8(std::string_view text);

bool is_alphanumeric(char32_t c);
bool is_whitespace(char32_t c);

// Splits on Unicode whitespace, drops tokens that contain no alphanumeric
// character and strips leading/trailing punctuation from the rest.
std::vector<std::string> tokenize_line(std::string_view text);

// Simple Unicode case folding, code point by code point.
std::string fold_case(std::string_view word);

// Levenshtein distance over code points.
std::size_t edit_distance(std::string_view a, std::string_view b);

// Splits on `sep`, keeping empty fields.
std::vector<std::string_view> split(std::string_view line, char sep);

// Splits on runs of ASCII blanks (space, tab).
std::vector<std::string_view> split_blanks(std::string_view line);

std::string_view trim(std::string_view s);

}  // namespace wordvec
