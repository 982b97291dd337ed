#include "trusty/artifact_code.hpp"

#include "trusty/error.hpp"

#include <array>

namespace trusty {

namespace {
constexpr std::array<ModuleId, 2> kRegistry{kModuleFA, kModuleRA};
}  // namespace

bool ModuleId::supported() const noexcept {
    for (const auto& m : kRegistry) {
        if (m == *this) return true;
    }
    return false;
}

std::span<const ModuleId> registered_modules() noexcept { return kRegistry; }

ArtifactCode::ArtifactCode(ModuleId module, std::string hash_chars)
    : module_(module), hash_(std::move(hash_chars)) {
    if (!is_base64_char(module_.type) || !is_base64_char(module_.version)) {
        throw MalformedCodeError("module id characters must be Base64");
    }
    if (!is_valid_hash_chars(hash_)) {
        throw MalformedCodeError("invalid hash characters: " + hash_);
    }
}

ArtifactCode ArtifactCode::from_digest(ModuleId module, const Digest& digest) {
    return ArtifactCode(module, encode_hash(digest));
}

bool ArtifactCode::is_well_formed(std::string_view s, ModulePolicy policy) noexcept {
    if (s.size() != kArtifactCodeLength) return false;
    if (!is_base64_char(s[0]) || !is_base64_char(s[1])) return false;
    if (!is_valid_hash_chars(s.substr(2))) return false;
    return policy == ModulePolicy::allow_unknown || ModuleId{s[0], s[1]}.supported();
}

ArtifactCode ArtifactCode::parse(std::string_view s, ModulePolicy policy) {
    if (s.size() != kArtifactCodeLength) {
        throw MalformedCodeError("artifact code must be 45 characters, got " +
                                 std::to_string(s.size()));
    }
    for (char c : s) {
        if (!is_base64_char(c)) {
            throw MalformedCodeError(std::string("character not in Base64 alphabet: '") + c + "'");
        }
    }
    if (!is_valid_hash_chars(s.substr(2))) {
        throw MalformedCodeError("hash padding bits are not zero");
    }
    ModuleId module{s[0], s[1]};
    if (policy == ModulePolicy::registered_only && !module.supported()) {
        throw UnsupportedModuleError("unsupported module: " + module.str());
    }
    ArtifactCode code;
    code.module_ = module;
    code.hash_ = std::string(s.substr(2));
    return code;
}

}  // namespace trusty
