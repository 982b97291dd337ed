#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace trusty {

enum class CheckStatus { valid, invalid, error };

struct CheckResult {
    CheckStatus status = CheckStatus::error;
    std::string expected;                 // artifact code claimed by the name / URI
    std::optional<std::string> computed;  // absent when no hash could be computed
    std::string message;

    bool ok() const noexcept { return status == CheckStatus::valid; }

    static CheckResult error(std::string expected, std::string message) {
        return {CheckStatus::error, std::move(expected), std::nullopt, std::move(message)};
    }
    static CheckResult compare(std::string expected, std::string computed) {
        auto status = expected == computed ? CheckStatus::valid : CheckStatus::invalid;
        return {status, std::move(expected), std::move(computed), {}};
    }
};

constexpr std::string_view status_name(CheckStatus s) noexcept {
    switch (s) {
        case CheckStatus::valid: return "VALID";
        case CheckStatus::invalid: return "INVALID";
        case CheckStatus::error: return "ERROR";
    }
    return "ERROR";
}

// 0 for VALID, 1 for INVALID, 2 for ERROR; aggregate with max.
constexpr int exit_code(CheckStatus s) noexcept {
    switch (s) {
        case CheckStatus::valid: return 0;
        case CheckStatus::invalid: return 1;
        case CheckStatus::error: return 2;
    }
    return 2;
}

}  // namespace trusty
