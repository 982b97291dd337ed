#include "trusty/module_ra.hpp"

#include "trusty/error.hpp"
#include "trusty/rdf/canonical.hpp"
#include "trusty/sha256.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>

namespace trusty::ra {

namespace {

constexpr std::string_view kSkolemMarker = "..";

bool is_absolute_uri(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    auto is_alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
    if (!is_alpha(s[0])) return false;
    for (std::size_t i = 1; i < colon; ++i) {
        char c = s[i];
        if (!is_alpha(c) && !(c >= '0' && c <= '9') && c != '+' && c != '-' && c != '.') return false;
    }
    return true;
}

const std::filesystem::path& temp_root(const LargeOptions& options, std::filesystem::path& storage) {
    if (options.temp_root.empty()) {
        storage = default_temp_root();
        return storage;
    }
    return options.temp_root;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failure on " + path.string());
}

std::string fill_iri(std::string_view iri, std::string_view code) {
    std::string out;
    out.reserve(iri.size() + code.size());
    for (char c : iri) {
        if (c == kCodeSlot) {
            out.append(code);
        } else {
            out.push_back(c);
        }
    }
    return out;
}

// Writes decoded canonical groups (placeholder form) as N-Quads with the
// code filled in.
class TrustyWriter {
public:
    TrustyWriter(const std::filesystem::path& path, std::string code)
        : out_(path, std::ios::binary | std::ios::trunc), path_(path), code_(std::move(code)) {
        if (!out_) throw IoError("cannot write " + path.string());
    }

    void write(std::string_view group) {
        line_.clear();
        rdf::write_nquad(line_, fill_slots(rdf::decode_line_group(group), code_));
        out_.write(line_.data(), static_cast<std::streamsize>(line_.size()));
    }

    void close() {
        out_.close();
        if (!out_) throw IoError("write failure on " + path_.string());
    }

private:
    std::ofstream out_;
    std::filesystem::path path_;
    std::string code_;
    std::string line_;
};

TrustyUri trusty_uri_for(std::string_view base_uri, const ArtifactCode& code) {
    return make_trusty_uri(base_uri, code);
}

template <typename Fn>
CheckResult guarded_check(const ArtifactCode& expected, Fn&& fn) {
    if (expected.module() != kModuleRA) {
        return CheckResult::error(expected.str(), "expected module RA, got " + expected.module().str());
    }
    try {
        return fn();
    } catch (const std::exception& e) {
        return CheckResult::error(expected.str(), e.what());
    }
}

std::string checked_group(const rdf::Quad& q, std::string_view code) {
    if (rdf::has_blank_node(q)) throw Error("trusty RDF content must not contain blank nodes");
    return rdf::line_group(q, code);
}

}  // namespace

Preprocessor::Preprocessor(std::string base_uri) : base_(std::move(base_uri)) {
    if (!is_absolute_uri(base_)) throw Error("base URI is not absolute: " + base_);
    if (base_.find_first_of(" \t\n\r") != std::string::npos) {
        throw Error("base URI contains whitespace: " + base_);
    }
    if (contains_artifact_code(base_)) throw Error("base URI already contains an artifact code: " + base_);
    slot_prefix_ = with_delimiter(base_);
    slot_prefix_.push_back(kCodeSlot);
}

rdf::Term Preprocessor::apply(const rdf::Term& t) {
    if (t.is_blank_node()) {
        auto [it, inserted] = blank_ids_.try_emplace(t.value(), blank_ids_.size() + 1);
        return rdf::Term::iri(slot_prefix_ + std::string(kSkolemMarker) + std::to_string(it->second));
    }
    if (!t.is_iri()) return t;
    const auto& v = t.value();
    if (v == base_) return rdf::Term::iri(slot_prefix_);
    if (v.size() > base_.size() && v.starts_with(base_) && !is_base64_char(v[base_.size()])) {
        return rdf::Term::iri(slot_prefix_ + v.substr(base_.size()));
    }
    return t;
}

rdf::Quad Preprocessor::apply(const rdf::Quad& q) {
    rdf::Quad out;
    out.subject = apply(q.subject);
    out.predicate = apply(q.predicate);
    out.object = apply(q.object);
    if (q.graph) out.graph = apply(*q.graph);
    return out;
}

rdf::Dataset preprocess(const rdf::Dataset& dataset, std::string_view base_uri) {
    Preprocessor pre{std::string(base_uri)};
    rdf::Dataset out;
    out.reserve(dataset.size());
    for (const auto& q : dataset) out.push_back(pre.apply(q));
    return out;
}

std::string CanonicalForm::bytes() const {
    std::string out;
    for (const auto& g : groups) out += g;
    return out;
}

CanonicalForm canonical_serialize(const rdf::Dataset& dataset, std::string_view blank_code) {
    CanonicalForm form;
    form.groups.reserve(dataset.size());
    for (const auto& q : dataset) form.groups.push_back(rdf::line_group(q, blank_code));
    std::sort(form.groups.begin(), form.groups.end());
    form.groups.erase(std::unique(form.groups.begin(), form.groups.end()), form.groups.end());
    return form;
}

ArtifactCode ra_code(const CanonicalForm& canonical) {
    Sha256 h;
    for (const auto& g : canonical.groups) h.update(g);
    return ArtifactCode::from_digest(kModuleRA, h.finish());
}

rdf::Quad fill_slots(rdf::Quad q, std::string_view code) {
    auto fill = [code](rdf::Term& t) {
        if (t.is_iri() && t.value().find(kCodeSlot) != std::string::npos) {
            t = rdf::Term::iri(fill_iri(t.value(), code));
        }
    };
    fill(q.subject);
    fill(q.predicate);
    fill(q.object);
    if (q.graph) fill(*q.graph);
    return q;
}

std::string trusty_file_name(const TrustyUri& uri) {
    auto full = uri.str();
    auto cut = full.find_last_of("/#");
    auto segment = cut == std::string::npos ? full : full.substr(cut + 1);
    return segment + ".nq";
}

TransformResult transform_rdf(const rdf::Dataset& input, std::string_view base_uri,
                              const std::filesystem::path& output_dir) {
    auto canonical = canonical_serialize(preprocess(input, base_uri));
    auto code = ra_code(canonical);

    TransformResult result;
    result.uri = trusty_uri_for(base_uri, code);
    result.file = output_dir / trusty_file_name(result.uri);
    auto code_str = code.str();
    std::string text;
    result.output.reserve(canonical.groups.size());
    for (const auto& g : canonical.groups) {
        result.output.push_back(fill_slots(rdf::decode_line_group(g), code_str));
        rdf::write_nquad(text, result.output.back());
    }
    write_file(result.file, text);
    return result;
}

TransformResult transform_large_rdf(std::istream& input, std::string_view base_uri,
                                    const std::filesystem::path& output_dir,
                                    const LargeOptions& options, rdf::Syntax syntax) {
    std::filesystem::path root_storage;
    TempDir tmp(temp_root(options, root_storage));
    Preprocessor pre{std::string(base_uri)};

    // Pass 1: preprocess, sort under budget, hash the merged stream and keep
    // it for pass 2.
    ExternalSorter sorter(options.memory_budget, tmp.path());
    rdf::NQuadsReader reader(input, syntax);
    std::string group;
    while (auto q = reader.next()) {
        group.clear();
        rdf::append_line_group(group, pre.apply(*q));
        sorter.add(std::move(group));
    }

    auto merged_path = tmp.path() / "merged";
    Sha256 h;
    {
        std::unique_ptr<std::FILE, int (*)(std::FILE*)> merged(std::fopen(merged_path.c_str(), "wb"),
                                                                &std::fclose);
        if (!merged) throw IoError("cannot create " + merged_path.string());
        sorter.finish([&](std::string_view g) {
            h.update(g);
            if (std::fwrite(g.data(), 1, g.size(), merged.get()) != g.size()) {
                throw IoError("write failure on " + merged_path.string());
            }
        });
        if (std::fclose(merged.release()) != 0) throw IoError("write failure on " + merged_path.string());
    }
    auto code = ArtifactCode::from_digest(kModuleRA, h.finish());

    // Pass 2: stream the sorted groups back out with the code in place.
    TransformResult result;
    result.uri = trusty_uri_for(base_uri, code);
    result.file = output_dir / trusty_file_name(result.uri);
    TrustyWriter writer(result.file, code.str());
    LineGroupReader merged(merged_path);
    while (merged.next(group)) writer.write(group);
    writer.close();
    return result;
}

std::string nanopub_base_uri(const rdf::Dataset& input) {
    std::set<std::string> subjects;
    for (const auto& q : input) {
        if (q.predicate.value() == rdf::kRdfType && q.object.is_iri() &&
            q.object.value() == kNanopublicationClass) {
            if (!q.subject.is_iri()) throw Error("nanopublication subject must be an IRI");
            subjects.insert(q.subject.value());
        }
    }
    if (subjects.empty()) throw Error("no statement types a subject as np:Nanopublication");
    if (subjects.size() > 1) {
        throw Error("found " + std::to_string(subjects.size()) + " nanopublication subjects, expected one");
    }
    return *subjects.begin();
}

TransformResult transform_nanopub(const rdf::Dataset& input, const std::filesystem::path& output_dir) {
    return transform_rdf(input, nanopub_base_uri(input), output_dir);
}

CheckResult check_rdf(const rdf::Dataset& dataset, const ArtifactCode& expected) {
    return guarded_check(expected, [&] {
        for (const auto& q : dataset) {
            if (rdf::has_blank_node(q)) throw Error("trusty RDF content must not contain blank nodes");
        }
        auto code = ra_code(canonical_serialize(dataset, expected.str()));
        return CheckResult::compare(expected.str(), code.str());
    });
}

CheckResult check_rdf(std::istream& input, const ArtifactCode& expected, rdf::Syntax syntax) {
    return guarded_check(expected, [&] { return check_rdf(rdf::parse_nquads(input, syntax), expected); });
}

CheckResult check_large_rdf(std::istream& input, const ArtifactCode& expected,
                            const LargeOptions& options, rdf::Syntax syntax) {
    return guarded_check(expected, [&] {
        std::filesystem::path root_storage;
        TempDir tmp(temp_root(options, root_storage));
        ExternalSorter sorter(options.memory_budget, tmp.path());
        auto code = expected.str();
        rdf::NQuadsReader reader(input, syntax);
        while (auto q = reader.next()) sorter.add(checked_group(*q, code));
        Sha256 h;
        sorter.finish([&h](std::string_view g) { h.update(g); });
        return CheckResult::compare(code, ArtifactCode::from_digest(kModuleRA, h.finish()).str());
    });
}

CheckResult check_sorted_rdf(std::istream& input, const ArtifactCode& expected, rdf::Syntax syntax) {
    return guarded_check(expected, [&] {
        auto code = expected.str();
        rdf::NQuadsReader reader(input, syntax);
        Sha256 h;
        std::string prev;
        std::string current;
        std::size_t ordinal = 0;
        while (auto q = reader.next()) {
            ++ordinal;
            current = checked_group(*q, code);
            if (ordinal > 1 && current <= prev) {
                return CheckResult::error(
                    code, "statement " + std::to_string(ordinal) + " (line " +
                              std::to_string(reader.line_number()) + ") is " +
                              (current == prev ? "a duplicate" : "out of order"));
            }
            h.update(current);
            std::swap(prev, current);
        }
        return CheckResult::compare(code, ArtifactCode::from_digest(kModuleRA, h.finish()).str());
    });
}

}  // namespace trusty::ra
