#pragma once

#include <cstdint>
#include <string>
#include <string_view>

// UTF-8 helpers shared by the pipeline, the crawler and the evaluator.
namespace wikicorpus::text {

bool is_valid_utf8(std::string_view s) noexcept;

/// NFC-normalizes valid UTF-8. Throws Error(InvalidEncoding) otherwise.
std::string nfc(std::string_view s);

/// Locale-independent lowercase (root locale), ASCII fast path.
std::string to_lower(std::string_view s);

/// Decodes the code point starting at s[pos]; `len` receives its byte length.
/// Input must be valid UTF-8.
char32_t decode(std::string_view s, std::size_t pos, std::size_t& len) noexcept;

bool is_space(char32_t c) noexcept;
bool is_alpha(char32_t c) noexcept;
bool is_digit(char32_t c) noexcept;
bool is_upper(char32_t c) noexcept;
inline bool is_alnum(char32_t c) noexcept { return is_alpha(c) || is_digit(c); }

bool has_letter(std::string_view s) noexcept;
bool is_all_digits(std::string_view s) noexcept;
bool starts_with_upper(std::string_view s) noexcept;

std::string_view trim(std::string_view s) noexcept;

/// Trims, collapses inner whitespace runs to one space, lowercases.
std::string normalize_phrase(std::string_view s);

std::string sha256_hex(std::string_view data);

}  // namespace wikicorpus::text
