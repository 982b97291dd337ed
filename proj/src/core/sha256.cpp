#include "trusty/sha256.hpp"

#include "trusty/error.hpp"

#include <openssl/evp.h>

#include <array>

namespace trusty {

struct Sha256::Impl {
    EVP_MD_CTX* ctx = nullptr;

    Impl() : ctx(EVP_MD_CTX_new()) {
        if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
            EVP_MD_CTX_free(ctx);
            throw Error("SHA-256 initialisation failed");
        }
    }
    ~Impl() { EVP_MD_CTX_free(ctx); }
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {}
Sha256::~Sha256() = default;
Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&&) noexcept = default;

void Sha256::update(std::span<const std::uint8_t> bytes) {
    if (!impl_) throw std::logic_error("Sha256 used after finish()");
    if (bytes.empty()) return;
    EVP_DigestUpdate(impl_->ctx, bytes.data(), bytes.size());
}

void Sha256::update(std::string_view text) {
    update(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Digest Sha256::finish() {
    if (!impl_) throw std::logic_error("Sha256 used after finish()");
    Digest out{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(impl_->ctx, out.data(), &len);
    impl_.reset();
    return out;
}

Digest sha256(std::string_view bytes) {
    Sha256 h;
    h.update(bytes);
    return h.finish();
}

Digest sha256(std::istream& in) {
    Sha256 h;
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        auto n = in.gcount();
        if (n > 0) h.update(std::string_view(buf.data(), static_cast<std::size_t>(n)));
    }
    if (in.bad()) throw IoError("read failure while hashing");
    return h.finish();
}

}  // namespace trusty
