#include "trusty/module_fa.hpp"

#include "trusty/error.hpp"
#include "trusty/sha256.hpp"
#include "trusty/trusty_uri.hpp"

#include <fstream>
#include <system_error>

namespace trusty::fa {

ArtifactCode fa_code(std::istream& in) { return ArtifactCode::from_digest(kModuleFA, sha256(in)); }

ArtifactCode fa_code(std::string_view bytes) {
    return ArtifactCode::from_digest(kModuleFA, sha256(bytes));
}

ArtifactCode fa_code_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return fa_code(in);
}

CheckResult check_bytes(std::string_view bytes, const ArtifactCode& expected) {
    if (expected.module() != kModuleFA) {
        return CheckResult::error(expected.str(), "expected module FA, got " + expected.module().str());
    }
    return CheckResult::compare(expected.str(), fa_code(bytes).str());
}

CheckResult check_file(const std::filesystem::path& path, const ArtifactCode& expected) {
    if (expected.module() != kModuleFA) {
        return CheckResult::error(expected.str(), "expected module FA, got " + expected.module().str());
    }
    try {
        return CheckResult::compare(expected.str(), fa_code_file(path).str());
    } catch (const Error& e) {
        return CheckResult::error(expected.str(), e.what());
    }
}

std::string TrustyFileName::str() const {
    auto out = stem + "." + code.str();
    if (extension) out += "." + *extension;
    return out;
}

TrustyFileName trusty_file_name(const std::filesystem::path& original, const ArtifactCode& code) {
    auto name = original.filename();
    TrustyFileName out{name.stem().string(), code, std::nullopt};
    auto ext = name.extension().string();
    if (!ext.empty()) out.extension = ext.substr(1);
    return out;
}

std::filesystem::path process_file(const std::filesystem::path& path) {
    auto name = path.filename().string();
    if (contains_artifact_code(name)) {
        throw Error("file name already contains an artifact code: " + name);
    }
    auto code = fa_code_file(path);
    auto target = path.parent_path() / trusty_file_name(path, code).str();
    std::error_code ec;
    if (std::filesystem::exists(target, ec)) throw Error("target already exists: " + target.string());
    std::filesystem::rename(path, target, ec);
    if (ec) throw IoError("rename " + path.string() + " -> " + target.string() + ": " + ec.message());
    return target;
}

}  // namespace trusty::fa
