#include "trusty/rdf/term.hpp"

#include <algorithm>

namespace trusty::rdf {

Term Term::iri(std::string value) {
    Term t;
    t.kind_ = TermKind::iri;
    t.value_ = std::move(value);
    return t;
}

Term Term::blank_node(std::string label) {
    Term t;
    t.kind_ = TermKind::blank_node;
    t.value_ = std::move(label);
    return t;
}

Term Term::literal(std::string lexical) {
    Term t;
    t.kind_ = TermKind::literal;
    t.value_ = std::move(lexical);
    return t;
}

Term Term::lang_literal(std::string lexical, std::string_view language) {
    Term t = literal(std::move(lexical));
    t.language_.assign(language);
    std::transform(t.language_.begin(), t.language_.end(), t.language_.begin(), [](char c) {
        return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    });
    return t;
}

Term Term::typed_literal(std::string lexical, std::string datatype) {
    Term t = literal(std::move(lexical));
    if (datatype != kXsdString) t.datatype_ = std::move(datatype);
    return t;
}

bool has_blank_node(const Quad& q) noexcept {
    return q.subject.is_blank_node() || q.object.is_blank_node() ||
           (q.graph && q.graph->is_blank_node());
}

}  // namespace trusty::rdf
