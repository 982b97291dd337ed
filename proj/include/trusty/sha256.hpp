#pragma once

#include "trusty/base64.hpp"

#include <istream>
#include <memory>
#include <span>
#include <string_view>

namespace trusty {

// Incremental SHA-256 over libcrypto's EVP interface.
class Sha256 {
public:
    Sha256();
    ~Sha256();
    Sha256(Sha256&&) noexcept;
    Sha256& operator=(Sha256&&) noexcept;
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(std::span<const std::uint8_t> bytes);
    void update(std::string_view text);

    // Consumes the hasher; further updates are an error.
    Digest finish();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

Digest sha256(std::string_view bytes);

// Hashes the remaining bytes of the stream in fixed-size chunks.
Digest sha256(std::istream& in);

}  // namespace trusty
