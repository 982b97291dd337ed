#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trusty::rdf {

inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

enum class TermKind : unsigned char { iri, blank_node, literal };

// An RDF node. Literals carry at most one of language / datatype; a literal
// typed xsd:string is stored as a plain literal and language tags are
// stored lowercase.
class Term {
public:
    Term() = default;

    static Term iri(std::string value);
    static Term blank_node(std::string label);
    static Term literal(std::string lexical);
    static Term lang_literal(std::string lexical, std::string_view language);
    static Term typed_literal(std::string lexical, std::string datatype);

    TermKind kind() const noexcept { return kind_; }
    bool is_iri() const noexcept { return kind_ == TermKind::iri; }
    bool is_blank_node() const noexcept { return kind_ == TermKind::blank_node; }
    bool is_literal() const noexcept { return kind_ == TermKind::literal; }

    const std::string& value() const noexcept { return value_; }
    // Empty when absent.
    const std::string& language() const noexcept { return language_; }
    const std::string& datatype() const noexcept { return datatype_; }

    std::string& mutable_value() noexcept { return value_; }

    bool operator==(const Term&) const = default;

private:
    TermKind kind_ = TermKind::iri;
    std::string value_;
    std::string language_;
    std::string datatype_;
};

struct Quad {
    Term subject;
    Term predicate;
    Term object;
    std::optional<Term> graph;  // nullopt: default graph

    bool operator==(const Quad&) const = default;
};

using Dataset = std::vector<Quad>;

bool has_blank_node(const Quad& q) noexcept;

}  // namespace trusty::rdf
