#include "trusty/remote_check.hpp"

#include "trusty/error.hpp"
#include "trusty/module_fa.hpp"
#include "trusty/module_ra.hpp"

#include <httplib.h>

#include <sstream>
#include <vector>

namespace trusty::remote {

namespace {

struct Url {
    std::string origin;  // scheme://host[:port]
    std::string target;  // path[?query], at least "/"
};

Url split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw Error("not an absolute http(s) URL: " + url);
    auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") throw Error("unsupported URL scheme: " + scheme);
    auto path_start = url.find_first_of("/?#", scheme_end + 3);
    Url out;
    out.origin = url.substr(0, path_start);
    out.target = path_start == std::string::npos ? "/" : url.substr(path_start);
    if (auto hash = out.target.find('#'); hash != std::string::npos) out.target.resize(hash);
    if (out.target.empty() || out.target.front() != '/') out.target.insert(0, "/");
    return out;
}

std::string remove_dot_segments(const std::string& target) {
    auto query_at = target.find('?');
    auto path = target.substr(0, query_at);
    auto query = query_at == std::string::npos ? std::string{} : target.substr(query_at);
    std::vector<std::string> segments;
    std::size_t start = 1;
    while (start <= path.size()) {
        auto end = path.find('/', start);
        if (end == std::string::npos) end = path.size();
        auto seg = path.substr(start, end - start);
        bool last = end == path.size();
        if (seg == "..") {
            if (!segments.empty()) segments.pop_back();
            if (last) segments.emplace_back();
        } else if (seg == ".") {
            if (last) segments.emplace_back();
        } else {
            segments.push_back(seg);
        }
        start = end + 1;
    }
    std::string out;
    for (const auto& seg : segments) out += "/" + seg;
    if (out.empty()) out = "/";
    return out + query;
}

std::string resolve_location(const Url& current, const std::string& location) {
    if (location.find("://") != std::string::npos) return location;
    if (location.starts_with("//")) {
        return current.origin.substr(0, current.origin.find("://") + 1) + location;
    }
    if (location.starts_with("/")) return current.origin + location;
    auto path = current.target.substr(0, current.target.find('?'));
    return current.origin + remove_dot_segments(path.substr(0, path.rfind('/') + 1) + location);
}

bool is_redirect(int status) {
    return status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
}

std::string media_type(std::string_view content_type) {
    auto semi = content_type.find(';');
    auto mt = std::string(content_type.substr(0, semi));
    while (!mt.empty() && mt.back() == ' ') mt.pop_back();
    return mt;
}

}  // namespace

std::string FetchPolicy::accept_for(const ModuleId& module) const {
    if (accept_header) return *accept_header;
    return module == kModuleRA ? std::string(kNQuadsMediaType) : "*/*";
}

FetchResponse http_get(const std::string& url, const std::string& accept, const FetchPolicy& policy) {
    if (policy.max_redirects < 0) throw Error("max_redirects must be >= 0");
    if (policy.timeout.count() <= 0) throw Error("timeout must be positive");

    std::string current = url;
    for (int redirects = 0;; ++redirects) {
        auto parts = split_url(current);
        httplib::Client client(parts.origin);
        auto ms = policy.timeout.count();
        client.set_connection_timeout(std::chrono::milliseconds(ms));
        client.set_read_timeout(std::chrono::milliseconds(ms));
        client.set_write_timeout(std::chrono::milliseconds(ms));
        client.set_follow_location(false);

        auto res = client.Get(parts.target, httplib::Headers{{"Accept", accept}});
        if (!res) throw Error("GET " + current + " failed: " + httplib::to_string(res.error()));

        if (is_redirect(res->status)) {
            if (redirects >= policy.max_redirects) {
                throw Error("too many redirects (limit " + std::to_string(policy.max_redirects) + ") at " +
                            current);
            }
            auto location = res->get_header_value("Location");
            if (location.empty()) throw Error("redirect without Location from " + current);
            current = resolve_location(parts, location);
            continue;
        }
        FetchResponse out;
        out.status = res->status;
        out.body = std::move(res->body);
        out.content_type = res->get_header_value("Content-Type");
        out.final_url = current;
        return out;
    }
}

CheckResult check_body(const TrustyUri& uri, std::string_view body, std::string_view content_type) {
    const auto& code = uri.code;
    if (code.module() == kModuleFA) return fa::check_bytes(body, code);
    if (code.module() == kModuleRA) {
        std::istringstream in{std::string(body)};
        auto result = ra::check_rdf(in, code, rdf::Syntax::nquads);
        auto mt = media_type(content_type);
        if (!mt.empty() && mt != kNQuadsMediaType && mt != "application/n-triples" &&
            result.status != CheckStatus::error) {
            result.message = "warning: parsed as N-Quads despite Content-Type " + mt;
        }
        return result;
    }
    return CheckResult::error(code.str(), "unsupported module: " + code.module().str());
}

CheckResult fetch_and_check(const TrustyUri& uri, const std::optional<std::string>& source,
                            const FetchPolicy& policy) {
    auto expected = uri.code.str();
    if (!uri.code.module().supported()) {
        return CheckResult::error(expected, "unsupported module: " + uri.code.module().str());
    }
    auto url = source.value_or(uri.str_with_extension());
    try {
        auto res = http_get(url, policy.accept_for(uri.code.module()), policy);
        if (res.status == 404) return CheckResult::error(expected, "not-found: " + res.final_url);
        if (res.status < 200 || res.status >= 300) {
            return CheckResult::error(expected, "HTTP " + std::to_string(res.status) + " from " + res.final_url);
        }
        return check_body(uri, res.body, res.content_type);
    } catch (const std::exception& e) {
        return CheckResult::error(expected, e.what());
    }
}

}  // namespace trusty::remote
