#include "trusty/trusty_uri.hpp"

#include "trusty/error.hpp"

namespace trusty {

namespace {

constexpr std::size_t kMaxExtensionStrips = 2;
constexpr std::size_t kMaxExtensionLength = 10;

bool is_ascii_alnum(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

// Length of the ".<ext>" suffix that may be stripped, or 0.
std::size_t strippable_extension(std::string_view s) {
    auto dot = s.rfind('.');
    if (dot == std::string_view::npos) return 0;
    auto seg = s.substr(dot + 1);
    if (seg.empty() || seg.size() > kMaxExtensionLength) return 0;
    for (char c : seg) {
        if (!is_ascii_alnum(c)) return 0;
    }
    return seg.size() + 1;
}

bool tail_is_code(std::string_view s) {
    return s.size() >= kArtifactCodeLength &&
           ArtifactCode::is_well_formed(s.substr(s.size() - kArtifactCodeLength));
}

}  // namespace

std::string TrustyUri::str_with_extension() const {
    auto out = str();
    if (extension) out += "." + *extension;
    return out;
}

std::string with_delimiter(std::string_view base) {
    std::string out(base);
    if (!out.empty() && is_base64_char(out.back())) out.push_back('.');
    return out;
}

TrustyUri extract_trusty_uri(std::string_view uri) {
    std::string_view rest = uri;
    std::string extension;
    for (std::size_t depth = 0;; ++depth) {
        if (tail_is_code(rest)) {
            auto split = rest.size() - kArtifactCodeLength;
            if (split > 0 && is_base64_char(rest[split - 1])) {
                throw DelimiterError("artifact code is not delimited from the preceding text: " +
                                     std::string(uri));
            }
            TrustyUri out;
            out.base = std::string(rest.substr(0, split));
            out.code = ArtifactCode::parse(rest.substr(split), ModulePolicy::allow_unknown);
            if (!extension.empty()) out.extension = extension;
            return out;
        }
        if (depth == kMaxExtensionStrips) break;
        auto n = strippable_extension(rest);
        if (n == 0) break;
        auto seg = std::string(rest.substr(rest.size() - n + 1));
        extension = extension.empty() ? seg : seg + "." + extension;
        rest.remove_suffix(n);
    }
    throw NotTrustyUriError("no artifact code found: " + std::string(uri));
}

std::optional<TrustyUri> try_extract_trusty_uri(std::string_view uri) noexcept {
    try {
        return extract_trusty_uri(uri);
    } catch (...) {
        return std::nullopt;
    }
}

TrustyUri make_trusty_uri(std::string_view base, const ArtifactCode& code) {
    if (tail_is_code(base)) {
        auto split = base.size() - kArtifactCodeLength;
        if (split == 0 || !is_base64_char(base[split - 1])) {
            throw Error("base already ends with an artifact code: " + std::string(base));
        }
    }
    return TrustyUri{with_delimiter(base), code, std::nullopt};
}

bool contains_artifact_code(std::string_view s) noexcept {
    std::size_t i = 0;
    while (i < s.size()) {
        if (!is_base64_char(s[i])) {
            ++i;
            continue;
        }
        auto start = i;
        while (i < s.size() && is_base64_char(s[i])) ++i;
        if (i - start == kArtifactCodeLength &&
            ArtifactCode::is_well_formed(s.substr(start, kArtifactCodeLength),
                                         ModulePolicy::registered_only)) {
            return true;
        }
    }
    return false;
}

}  // namespace trusty
