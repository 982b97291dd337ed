#pragma once

#include "trusty/rdf/term.hpp"

#include <compare>
#include <string>
#include <string_view>

namespace trusty::rdf {

// Canonical statement encoding hashed by module RA. Each statement becomes
// four '\n'-terminated lines: graph (empty for the default graph), subject,
// predicate, object. IRIs are written raw; a literal is written as
// "escaped-lexical" followed by @lang or ^^datatype. Only backslash, double
// quote, LF and CR are escaped, so a group always has exactly four newlines.
//
// When blank_code is nonempty every occurrence of it inside an IRI is
// written as a single space.
//
// Throws std::invalid_argument if the quad contains a blank node.
void append_line_group(std::string& out, const Quad& q, std::string_view blank_code = {});
std::string line_group(const Quad& q, std::string_view blank_code = {});

// Inverse of line_group for groups written without blank_code substitution.
// Throws Error on malformed input.
Quad decode_line_group(std::string_view group);

// Code-point order of the canonical groups.
std::strong_ordering compare_quads(const Quad& a, const Quad& b);

}  // namespace trusty::rdf
