#pragma once

#include "trusty/rdf/term.hpp"

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace trusty::rdf {

enum class Syntax {
    nquads,
    ntriples,  // graph labels rejected
};

std::optional<Syntax> syntax_from_name(std::string_view name);

// Streaming N-Quads / N-Triples reader. Holds one line at a time; throws
// ParseError carrying the 1-based line number.
class NQuadsReader {
public:
    explicit NQuadsReader(std::istream& in, Syntax syntax = Syntax::nquads);

    std::optional<Quad> next();

    std::size_t line_number() const noexcept { return line_no_; }

private:
    bool fill_statement();

    std::istream& in_;
    Syntax syntax_;
    std::string line_;
    std::string_view pending_;
    std::size_t line_no_ = 0;
};

Dataset parse_nquads(std::istream& in, Syntax syntax = Syntax::nquads);
Dataset parse_nquads(std::string_view text, Syntax syntax = Syntax::nquads);

// Writes one statement terminated by " .\n". Only backslash, double quote,
// LF, CR and TAB are escaped inside literals.
void write_nquad(std::string& out, const Quad& q);
void write_nquad(std::ostream& out, const Quad& q);
std::string serialize_nquads(const Dataset& quads);

}  // namespace trusty::rdf
