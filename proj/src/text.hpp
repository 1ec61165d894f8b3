#pragma once

// Internal string helpers shared by the parsers.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geovote::detail {

std::string_view trim(std::string_view s) noexcept;

/// Lowercases ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic letters;
/// other code points pass through. Invalid UTF-8 bytes are kept as-is.
std::string casefold(std::string_view s);

/// casefold(trim(s))
std::string fold_key(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> split_whitespace(std::string_view s);

std::size_t utf8_length(std::string_view s) noexcept;
/// Byte offset of code point `cp_index`; nullopt when past the end.
std::optional<std::size_t> utf8_byte_offset(std::string_view s, std::size_t cp_index) noexcept;
/// Code point index of byte `byte_offset`; nullopt when inside a sequence or
/// past the end.
std::optional<std::size_t> utf8_codepoint_index(std::string_view s, std::size_t byte_offset) noexcept;
/// Substring by code point range [start, end); nullopt when out of range.
std::optional<std::string> utf8_substr(std::string_view s, std::size_t start, std::size_t end);

std::optional<double> parse_double(std::string_view s) noexcept;
std::optional<std::int64_t> parse_int(std::string_view s) noexcept;

std::uint64_t fnv1a64(std::string_view s) noexcept;
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Fixed 6-decimal formatting used by every report writer.
std::string fixed6(double v);

}  // namespace geovote::detail
