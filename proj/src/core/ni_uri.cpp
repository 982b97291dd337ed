#include "trusty/ni_uri.hpp"

#include "trusty/error.hpp"

namespace trusty {

namespace {
constexpr std::string_view kScheme = "ni://";
constexpr std::string_view kSha256 = "sha-256";
constexpr std::string_view kModuleParam = "module=";
}  // namespace

std::string NiUri::str() const {
    std::string out(kScheme);
    if (authority) out += *authority;
    out += "/" + algorithm + ";" + hash_chars;
    if (module) out += "?" + std::string(kModuleParam) + module->str();
    return out;
}

NiUri NiUri::parse(std::string_view s) {
    if (!s.starts_with(kScheme)) throw Error("not an ni URI: " + std::string(s));
    auto rest = s.substr(kScheme.size());
    auto slash = rest.find('/');
    if (slash == std::string_view::npos) throw Error("ni URI lacks a path: " + std::string(s));

    NiUri out;
    if (slash > 0) out.authority = std::string(rest.substr(0, slash));
    rest.remove_prefix(slash + 1);

    std::string_view query;
    if (auto q = rest.find('?'); q != std::string_view::npos) {
        query = rest.substr(q + 1);
        rest = rest.substr(0, q);
    }
    auto semi = rest.find(';');
    if (semi == std::string_view::npos) throw Error("ni URI lacks ';': " + std::string(s));
    out.algorithm = std::string(rest.substr(0, semi));
    out.hash_chars = std::string(rest.substr(semi + 1));

    while (!query.empty()) {
        auto amp = query.find('&');
        auto param = query.substr(0, amp);
        if (param.starts_with(kModuleParam)) {
            auto id = param.substr(kModuleParam.size());
            if (id.size() != 2 || !is_base64_char(id[0]) || !is_base64_char(id[1])) {
                throw MalformedCodeError("bad module parameter: " + std::string(id));
            }
            out.module = ModuleId{id[0], id[1]};
        }
        if (amp == std::string_view::npos) break;
        query.remove_prefix(amp + 1);
    }
    return out;
}

NiUri to_ni_uri(const TrustyUri& uri, std::optional<std::string> authority, bool include_module) {
    NiUri ni;
    ni.authority = std::move(authority);
    ni.algorithm = std::string(kSha256);
    ni.hash_chars = uri.code.hash_chars();
    if (include_module) ni.module = uri.code.module();
    return ni;
}

NiResolution from_ni_uri(const NiUri& ni) {
    if (ni.algorithm != kSha256) {
        throw UnsupportedAlgorithmError("unsupported ni hash algorithm: " + ni.algorithm);
    }
    if (!is_valid_hash_chars(ni.hash_chars)) {
        throw MalformedCodeError("invalid ni hash value: " + ni.hash_chars);
    }
    NiResolution out;
    out.hash_chars = ni.hash_chars;
    if (ni.module) {
        out.candidate_modules.push_back(*ni.module);
    } else {
        auto all = registered_modules();
        out.candidate_modules.assign(all.begin(), all.end());
    }
    return out;
}

}  // namespace trusty
