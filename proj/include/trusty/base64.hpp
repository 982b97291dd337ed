#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace trusty {

inline constexpr std::string_view kBase64Alphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";

inline constexpr std::size_t kDigestSize = 32;
inline constexpr std::size_t kHashChars = 43;

using Digest = std::array<std::uint8_t, kDigestSize>;

constexpr bool is_base64_char(char c) noexcept {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '-' || c == '_';
}

/// Value 0..63 of an alphabet character, or -1.
constexpr int base64_value(char c) noexcept {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '-') return 62;
    if (c == '_') return 63;
    return -1;
}

/// Renders a 32-byte digest as 43 characters: two zero bits are appended to
/// the 256 digest bits and every 6-bit group is mapped through the alphabet.
/// Throws std::invalid_argument when the input is not 32 bytes.
std::string encode_hash(std::span<const std::uint8_t> digest);

/// Inverse of encode_hash. Throws MalformedCodeError on wrong length, a
/// character outside the alphabet, or nonzero padding bits.
Digest decode_hash(std::string_view chars);

/// True when chars would be accepted by decode_hash.
bool is_valid_hash_chars(std::string_view chars) noexcept;

}  // namespace trusty
