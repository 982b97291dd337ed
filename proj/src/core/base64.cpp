#include "trusty/base64.hpp"

#include "trusty/error.hpp"

#include <stdexcept>

namespace trusty {

std::string encode_hash(std::span<const std::uint8_t> digest) {
    if (digest.size() != kDigestSize) {
        throw std::invalid_argument("encode_hash: expected 32-byte digest, got " +
                                    std::to_string(digest.size()));
    }
    std::string out;
    out.reserve(kHashChars);
    std::uint32_t acc = 0;
    int bits = 0;
    for (std::uint8_t byte : digest) {
        acc = (acc << 8) | byte;
        bits += 8;
        while (bits >= 6) {
            bits -= 6;
            out.push_back(kBase64Alphabet[(acc >> bits) & 0x3F]);
        }
    }
    // 256 = 42 * 6 + 4: four bits remain, padded with two zero bits.
    out.push_back(kBase64Alphabet[(acc << (6 - bits)) & 0x3F]);
    return out;
}

bool is_valid_hash_chars(std::string_view chars) noexcept {
    if (chars.size() != kHashChars) return false;
    for (char c : chars) {
        if (base64_value(c) < 0) return false;
    }
    return (base64_value(chars.back()) & 0x3) == 0;
}

Digest decode_hash(std::string_view chars) {
    if (chars.size() != kHashChars) {
        throw MalformedCodeError("hash must be 43 characters, got " +
                                 std::to_string(chars.size()));
    }
    Digest out{};
    std::uint32_t acc = 0;
    int bits = 0;
    std::size_t pos = 0;
    for (char c : chars) {
        int v = base64_value(c);
        if (v < 0) throw MalformedCodeError(std::string("character not in Base64 alphabet: '") + c + "'");
        acc = (acc << 6) | static_cast<std::uint32_t>(v);
        bits += 6;
        if (bits >= 8 && pos < kDigestSize) {
            bits -= 8;
            out[pos++] = static_cast<std::uint8_t>((acc >> bits) & 0xFF);
        }
    }
    if ((acc & ((1u << bits) - 1)) != 0) {
        throw MalformedCodeError("hash padding bits are not zero");
    }
    return out;
}

}  // namespace trusty
