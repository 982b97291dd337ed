#pragma once

#include "trusty/base64.hpp"

#include <compare>
#include <span>
#include <string>
#include <string_view>

namespace trusty {

inline constexpr std::size_t kArtifactCodeLength = 2 + kHashChars;

struct ModuleId {
    char type = 'F';
    char version = 'A';

    bool supported() const noexcept;
    std::string str() const { return {type, version}; }

    auto operator<=>(const ModuleId&) const = default;
};

inline constexpr ModuleId kModuleFA{'F', 'A'};
inline constexpr ModuleId kModuleRA{'R', 'A'};

// Registered modules in trial order. FA comes first because checking it
// needs no parsing.
std::span<const ModuleId> registered_modules() noexcept;

enum class ModulePolicy {
    registered_only,
    allow_unknown,
};

class ArtifactCode {
public:
    ArtifactCode() = default;
    ArtifactCode(ModuleId module, std::string hash_chars);

    static ArtifactCode from_digest(ModuleId module, const Digest& digest);

    // Throws MalformedCodeError for bad length, alphabet or padding bits.
    // Under registered_only an unknown module throws UnsupportedModuleError;
    // under allow_unknown it parses and module().supported() is false.
    static ArtifactCode parse(std::string_view s,
                              ModulePolicy policy = ModulePolicy::registered_only);

    // Well-formedness test without exceptions.
    static bool is_well_formed(std::string_view s,
                               ModulePolicy policy = ModulePolicy::allow_unknown) noexcept;

    const ModuleId& module() const noexcept { return module_; }
    const std::string& hash_chars() const noexcept { return hash_; }
    std::string str() const { return module_.str() + hash_; }

    bool operator==(const ArtifactCode&) const = default;

private:
    ModuleId module_;
    std::string hash_;
};

inline ArtifactCode parse_artifact_code(std::string_view s) { return ArtifactCode::parse(s); }

}  // namespace trusty
