#pragma once

#include "trusty/artifact_code.hpp"
#include "trusty/check_result.hpp"
#include "trusty/external_sort.hpp"
#include "trusty/rdf/nquads.hpp"
#include "trusty/rdf/term.hpp"
#include "trusty/trusty_uri.hpp"

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace trusty::ra {

// Inside preprocessed IRIs the artifact-code slot is a single space, which
// cannot occur in a parsed IRI.
inline constexpr char kCodeSlot = ' ';

inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{256} << 20;
inline constexpr std::size_t kMinimumMemoryBudget = std::size_t{16} << 20;

inline constexpr std::string_view kNanopublicationClass = "http://www.nanopub.org/nschema#Nanopublication";

// Streaming placeholder insertion and Skolemization against one base URI.
// Blank nodes are numbered from 1 in order of first appearance (subject,
// object, graph within a statement).
class Preprocessor {
public:
    // Throws Error if base_uri is not absolute or already carries a code.
    explicit Preprocessor(std::string base_uri);

    rdf::Quad apply(const rdf::Quad& q);
    rdf::Term apply(const rdf::Term& t);

    std::size_t skolem_count() const noexcept { return blank_ids_.size(); }

private:
    std::string base_;
    std::string slot_prefix_;  // base + delimiter + slot
    std::unordered_map<std::string, std::size_t> blank_ids_;
};

rdf::Dataset preprocess(const rdf::Dataset& dataset, std::string_view base_uri);

// Sorted, deduplicated canonical line groups.
struct CanonicalForm {
    std::vector<std::string> groups;

    std::string bytes() const;
};

// blank_code: when checking, the expected artifact code whose occurrences in
// IRIs are hashed as the slot. Throws std::invalid_argument on blank nodes.
CanonicalForm canonical_serialize(const rdf::Dataset& dataset, std::string_view blank_code = {});

ArtifactCode ra_code(const CanonicalForm& canonical);

// Replaces every slot in every IRI with the code.
rdf::Quad fill_slots(rdf::Quad q, std::string_view code);

struct TransformResult {
    TrustyUri uri;
    std::filesystem::path file;
    rdf::Dataset output;  // filled only by the in-memory transform
};

// <last segment of the trusty URI>.nq
std::string trusty_file_name(const TrustyUri& uri);

TransformResult transform_rdf(const rdf::Dataset& input, std::string_view base_uri,
                              const std::filesystem::path& output_dir);

struct LargeOptions {
    std::size_t memory_budget = kDefaultMemoryBudget;
    // Empty: default_temp_root().
    std::filesystem::path temp_root;
};

TransformResult transform_large_rdf(std::istream& input, std::string_view base_uri,
                                    const std::filesystem::path& output_dir,
                                    const LargeOptions& options = {},
                                    rdf::Syntax syntax = rdf::Syntax::nquads);

// Subject of the single rdf:type np:Nanopublication statement.
std::string nanopub_base_uri(const rdf::Dataset& input);

TransformResult transform_nanopub(const rdf::Dataset& input, const std::filesystem::path& output_dir);

CheckResult check_rdf(const rdf::Dataset& dataset, const ArtifactCode& expected);
CheckResult check_rdf(std::istream& input, const ArtifactCode& expected,
                      rdf::Syntax syntax = rdf::Syntax::nquads);
CheckResult check_large_rdf(std::istream& input, const ArtifactCode& expected,
                            const LargeOptions& options = {},
                            rdf::Syntax syntax = rdf::Syntax::nquads);
// ERROR as soon as a group is not strictly greater than its predecessor.
CheckResult check_sorted_rdf(std::istream& input, const ArtifactCode& expected,
                             rdf::Syntax syntax = rdf::Syntax::nquads);

}  // namespace trusty::ra
