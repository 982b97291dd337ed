#pragma once

#include "trusty/trusty_uri.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trusty {

// Named Information URI: ni://<authority>/<algorithm>;<value>[?module=XX]
struct NiUri {
    std::optional<std::string> authority;
    std::string algorithm = "sha-256";
    std::string hash_chars;
    std::optional<ModuleId> module;

    std::string str() const;

    static NiUri parse(std::string_view s);

    bool operator==(const NiUri&) const = default;
};

struct NiResolution {
    std::string hash_chars;
    std::vector<ModuleId> candidate_modules;
};

NiUri to_ni_uri(const TrustyUri& uri, std::optional<std::string> authority = std::nullopt,
                bool include_module = false);

// Throws UnsupportedAlgorithmError for anything but sha-256.
NiResolution from_ni_uri(const NiUri& ni);

}  // namespace trusty
