#pragma once

#include "trusty/artifact_code.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace trusty {

// A URI (or file name) whose tail is an artifact code. `base` runs up to and
// including the delimiter; `extension` is what was stripped after the code,
// without its leading dot (e.g. "nq" or "nq.gz").
struct TrustyUri {
    std::string base;
    ArtifactCode code;
    std::optional<std::string> extension;

    std::string str() const { return base + code.str(); }
    std::string str_with_extension() const;

    bool operator==(const TrustyUri&) const = default;
};

// Returns base with a '.' appended when its last character is in the Base64
// alphabet, so that an artifact code can follow it unambiguously.
std::string with_delimiter(std::string_view base);

// Strips at most two ".<ext>" segments (each 1-10 ASCII alphanumerics) until
// a well-formed artifact code forms the tail. Unknown module ids are
// accepted; callers decide what to do with them.
// Throws NotTrustyUriError if no code is found, DelimiterError if the code is
// directly preceded by a Base64 character.
TrustyUri extract_trusty_uri(std::string_view uri);

// Non-throwing variant.
std::optional<TrustyUri> try_extract_trusty_uri(std::string_view uri) noexcept;

// Throws Error when base already ends in a well-formed artifact code.
TrustyUri make_trusty_uri(std::string_view base, const ArtifactCode& code);

// True when s contains a registered-module artifact code bounded on both
// sides by non-Base64 characters (or the ends of s).
bool contains_artifact_code(std::string_view s) noexcept;

}  // namespace trusty
