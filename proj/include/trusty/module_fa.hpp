#pragma once

#include "trusty/artifact_code.hpp"
#include "trusty/check_result.hpp"

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>

namespace trusty::fa {

ArtifactCode fa_code(std::istream& in);
ArtifactCode fa_code(std::string_view bytes);
// Throws IoError if the file cannot be read.
ArtifactCode fa_code_file(const std::filesystem::path& path);

CheckResult check_bytes(std::string_view bytes, const ArtifactCode& expected);
CheckResult check_file(const std::filesystem::path& path, const ArtifactCode& expected);

// <stem>.<code>[.<extension>]
struct TrustyFileName {
    std::string stem;
    ArtifactCode code;
    std::optional<std::string> extension;

    std::string str() const;
};

// Only the final extension moves behind the code: a.tar.gz -> a.tar.<code>.gz
TrustyFileName trusty_file_name(const std::filesystem::path& original, const ArtifactCode& code);

// Renames the file into a trusty file and returns the new path. Throws Error
// when the name already carries an artifact code or the target exists.
std::filesystem::path process_file(const std::filesystem::path& path);

}  // namespace trusty::fa
