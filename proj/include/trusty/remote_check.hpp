#pragma once

#include "trusty/check_result.hpp"
#include "trusty/trusty_uri.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace trusty::remote {

inline constexpr std::string_view kNQuadsMediaType = "application/n-quads";

struct FetchPolicy {
    int max_redirects = 5;
    std::chrono::milliseconds timeout{std::chrono::seconds(30)};
    // Overrides the per-module default (application/n-quads for RA, */* for FA).
    std::optional<std::string> accept_header;

    std::string accept_for(const ModuleId& module) const;
};

struct FetchResponse {
    int status = 0;
    std::string body;
    std::string content_type;
    std::string final_url;
};

// GET with manual redirect handling. Throws Error on transport failure,
// timeout or when the redirect chain exceeds policy.max_redirects. Non-2xx
// final statuses are returned, not thrown.
FetchResponse http_get(const std::string& url, const std::string& accept, const FetchPolicy& policy);

// Verdict over fetched bytes. Depends only on the trusty URI and the body;
// content_type only feeds the diagnostic message.
CheckResult check_body(const TrustyUri& uri, std::string_view body, std::string_view content_type = {});

// Fetches `source` if given, otherwise the trusty URI itself, and checks the
// body against the URI's artifact code.
CheckResult fetch_and_check(const TrustyUri& uri, const std::optional<std::string>& source = std::nullopt,
                            const FetchPolicy& policy = {});

}  // namespace trusty::remote
