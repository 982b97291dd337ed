#include "trusty/rdf/nquads.hpp"

#include "trusty/error.hpp"

#include <sstream>

namespace trusty::rdf {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one UTF-8 sequence at s[i], advancing i. Returns kInvalid for
// malformed, overlong, surrogate or out-of-range sequences.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    std::size_t len;
    char32_t cp;
    char32_t min;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4, cp = b0 & 0x07, min = 0x10000;
    } else {
        return kInvalid;
    }
    if (i + len > s.size()) return kInvalid;
    for (std::size_t k = 1; k < len; ++k) {
        auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) return kInvalid;
        cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return kInvalid;
    i += len;
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_iri_forbidden(char32_t c) {
    switch (c) {
        case '<': case '>': case '"': case '{': case '}':
        case '|': case '^': case '`': case '\\':
            return true;
        default:
            return c <= 0x20;
    }
}

bool is_pn_chars_base(char32_t c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= 0xC0 && c <= 0xD6) ||
           (c >= 0xD8 && c <= 0xF6) || (c >= 0xF8 && c <= 0x2FF) || (c >= 0x370 && c <= 0x37D) ||
           (c >= 0x37F && c <= 0x1FFF) || (c >= 0x200C && c <= 0x200D) ||
           (c >= 0x2070 && c <= 0x218F) || (c >= 0x2C00 && c <= 0x2FEF) ||
           (c >= 0x3001 && c <= 0xD7FF) || (c >= 0xF900 && c <= 0xFDCF) ||
           (c >= 0xFDF0 && c <= 0xFFFD) || (c >= 0x10000 && c <= 0xEFFFF);
}

bool is_pn_chars_u(char32_t c) { return is_pn_chars_base(c) || c == '_' || c == ':'; }

bool is_pn_chars(char32_t c) {
    return is_pn_chars_u(c) || c == '-' || (c >= '0' && c <= '9') || c == 0xB7 ||
           (c >= 0x300 && c <= 0x36F) || (c >= 0x203F && c <= 0x2040);
}

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

bool has_scheme(std::string_view iri) {
    if (iri.empty() || !is_alpha(iri[0])) return false;
    for (std::size_t i = 1; i < iri.size(); ++i) {
        char c = iri[i];
        if (c == ':') return true;
        if (!is_alpha(c) && !is_digit(c) && c != '+' && c != '-' && c != '.') return false;
    }
    return false;
}

class StatementParser {
public:
    StatementParser(std::string_view text, std::size_t line, Syntax syntax)
        : s_(text), line_(line), syntax_(syntax) {}

    // nullopt for blank and comment-only lines.
    std::optional<Quad> parse() {
        validate_utf8();
        skip_ws();
        if (at_end() || peek() == '#') return std::nullopt;

        Quad q;
        q.subject = parse_subject_like("subject");
        skip_ws();
        if (at_end() || peek() != '<') fail("predicate must be an IRI");
        q.predicate = parse_iri();
        skip_ws();
        q.object = parse_object();
        skip_ws();
        if (!at_end() && (peek() == '<' || peek() == '_')) {
            if (syntax_ == Syntax::ntriples) fail("graph label not allowed in N-Triples");
            q.graph = parse_subject_like("graph label");
            skip_ws();
        }
        if (at_end() || peek() != '.') fail("expected '.' at end of statement");
        ++pos_;
        skip_ws();
        if (!at_end() && peek() != '#') fail("unexpected content after '.'");
        return q;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line_, msg + " (column " + std::to_string(pos_ + 1) + ")");
    }

    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }

    void skip_ws() {
        while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
    }

    void validate_utf8() {
        for (std::size_t i = 0; i < s_.size();) {
            if (static_cast<unsigned char>(s_[i]) < 0x80) {
                ++i;
                continue;
            }
            auto at = i;
            if (decode_utf8(s_, i) == kInvalid) {
                pos_ = at;
                fail("invalid UTF-8");
            }
        }
    }

    char32_t parse_uchar() {
        // at the character after '\'
        std::size_t digits;
        if (peek() == 'u') {
            digits = 4;
        } else if (peek() == 'U') {
            digits = 8;
        } else {
            fail("invalid escape");
        }
        ++pos_;
        if (pos_ + digits > s_.size()) fail("truncated unicode escape");
        char32_t cp = 0;
        for (std::size_t k = 0; k < digits; ++k) {
            int v = hex_value(s_[pos_ + k]);
            if (v < 0) fail("invalid hex digit in unicode escape");
            cp = (cp << 4) | static_cast<char32_t>(v);
        }
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("escape is not a Unicode scalar value");
        pos_ += digits;
        return cp;
    }

    Term parse_subject_like(const char* what) {
        if (at_end()) fail(std::string("missing ") + what);
        if (peek() == '<') return parse_iri();
        if (peek() == '_') return parse_blank();
        fail(std::string(what) + " must be an IRI or blank node");
    }

    Term parse_object() {
        if (at_end()) fail("missing object");
        switch (peek()) {
            case '<': return parse_iri();
            case '_': return parse_blank();
            case '"': return parse_literal();
            default: fail("object must be an IRI, blank node or literal");
        }
    }

    std::string parse_iri_value() {
        ++pos_;  // '<'
        std::string value;
        while (true) {
            auto run = pos_;
            while (run < s_.size()) {
                auto c = static_cast<unsigned char>(s_[run]);
                if (c >= 0x80 || !is_iri_forbidden(c)) {
                    ++run;
                } else {
                    break;
                }
            }
            value.append(s_.substr(pos_, run - pos_));
            pos_ = run;
            if (at_end()) fail("unterminated IRI");
            char c = peek();
            if (c == '>') {
                ++pos_;
                break;
            }
            if (c == '\\') {
                ++pos_;
                if (at_end()) fail("unterminated IRI");
                auto cp = parse_uchar();
                if (is_iri_forbidden(cp)) fail("escaped character not allowed in IRI");
                append_utf8(value, cp);
                continue;
            }
            fail(std::string("character not allowed in IRI: 0x") +
                 std::to_string(static_cast<unsigned char>(c)));
        }
        if (!has_scheme(value)) fail("IRI is not absolute: " + value);
        return value;
    }

    Term parse_iri() { return Term::iri(parse_iri_value()); }

    Term parse_blank() {
        if (pos_ + 1 >= s_.size() || s_[pos_ + 1] != ':') fail("expected '_:'");
        pos_ += 2;
        auto start = pos_;
        if (at_end()) fail("empty blank node label");
        std::size_t i = pos_;
        char32_t first = decode_utf8(s_, i);
        if (!is_pn_chars_u(first) && !(first >= '0' && first <= '9')) fail("invalid blank node label");
        auto last_good = i;
        while (i < s_.size()) {
            auto before = i;
            char32_t c = decode_utf8(s_, i);
            if (c == '.') continue;
            if (!is_pn_chars(c)) {
                i = before;
                break;
            }
            last_good = i;
        }
        pos_ = last_good;
        return Term::blank_node(std::string(s_.substr(start, pos_ - start)));
    }

    Term parse_literal() {
        ++pos_;  // '"'
        std::string lexical;
        while (true) {
            auto run = pos_;
            while (run < s_.size() && s_[run] != '"' && s_[run] != '\\' && s_[run] != '\n' &&
                   s_[run] != '\r') {
                ++run;
            }
            lexical.append(s_.substr(pos_, run - pos_));
            pos_ = run;
            if (at_end()) fail("unterminated string literal");
            char c = peek();
            if (c == '"') {
                ++pos_;
                break;
            }
            if (c != '\\') fail("line break inside string literal");
            ++pos_;
            if (at_end()) fail("unterminated string literal");
            switch (peek()) {
                case 't': lexical.push_back('\t'); ++pos_; break;
                case 'b': lexical.push_back('\b'); ++pos_; break;
                case 'n': lexical.push_back('\n'); ++pos_; break;
                case 'r': lexical.push_back('\r'); ++pos_; break;
                case 'f': lexical.push_back('\f'); ++pos_; break;
                case '"': lexical.push_back('"'); ++pos_; break;
                case '\'': lexical.push_back('\''); ++pos_; break;
                case '\\': lexical.push_back('\\'); ++pos_; break;
                default: append_utf8(lexical, parse_uchar()); break;
            }
        }
        if (!at_end() && peek() == '^') {
            if (pos_ + 1 >= s_.size() || s_[pos_ + 1] != '^') fail("expected '^^'");
            pos_ += 2;
            if (at_end() || peek() != '<') fail("datatype must be an IRI");
            return Term::typed_literal(std::move(lexical), parse_iri_value());
        }
        if (!at_end() && peek() == '@') {
            ++pos_;
            auto start = pos_;
            while (!at_end() && is_alpha(peek())) ++pos_;
            if (pos_ == start) fail("empty language tag");
            while (!at_end() && peek() == '-') {
                ++pos_;
                auto sub = pos_;
                while (!at_end() && (is_alpha(peek()) || is_digit(peek()))) ++pos_;
                if (pos_ == sub) fail("empty language subtag");
            }
            return Term::lang_literal(std::move(lexical), s_.substr(start, pos_ - start));
        }
        return Term::literal(std::move(lexical));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t line_;
    Syntax syntax_;
};

void append_escaped(std::string& out, std::string_view text) {
    auto run = std::size_t{0};
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char* esc = nullptr;
        switch (text[i]) {
            case '\\': esc = "\\\\"; break;
            case '"': esc = "\\\""; break;
            case '\n': esc = "\\n"; break;
            case '\r': esc = "\\r"; break;
            case '\t': esc = "\\t"; break;
            default: continue;
        }
        out.append(text.substr(run, i - run));
        out.append(esc);
        run = i + 1;
    }
    out.append(text.substr(run));
}

void append_term(std::string& out, const Term& t) {
    switch (t.kind()) {
        case TermKind::iri:
            out.push_back('<');
            out.append(t.value());
            out.push_back('>');
            break;
        case TermKind::blank_node:
            out.append("_:");
            out.append(t.value());
            break;
        case TermKind::literal:
            out.push_back('"');
            append_escaped(out, t.value());
            out.push_back('"');
            if (!t.language().empty()) {
                out.push_back('@');
                out.append(t.language());
            } else if (!t.datatype().empty()) {
                out.append("^^<");
                out.append(t.datatype());
                out.push_back('>');
            }
            break;
    }
}

}  // namespace

std::optional<Syntax> syntax_from_name(std::string_view name) {
    if (name == "nq" || name == "nquads" || name == "n-quads") return Syntax::nquads;
    if (name == "nt" || name == "ntriples" || name == "n-triples") return Syntax::ntriples;
    return std::nullopt;
}

NQuadsReader::NQuadsReader(std::istream& in, Syntax syntax) : in_(in), syntax_(syntax) {}

bool NQuadsReader::fill_statement() {
    if (!pending_.empty()) return true;
    if (!std::getline(in_, line_)) {
        if (in_.bad()) throw IoError("read failure at line " + std::to_string(line_no_ + 1));
        return false;
    }
    ++line_no_;
    pending_ = line_;
    if (pending_.empty()) pending_ = std::string_view(" ", 1);
    return true;
}

std::optional<Quad> NQuadsReader::next() {
    while (fill_statement()) {
        // A bare CR also terminates a statement.
        auto cr = pending_.find('\r');
        auto segment = pending_.substr(0, cr);
        pending_ = cr == std::string_view::npos ? std::string_view{} : pending_.substr(cr + 1);
        if (auto q = StatementParser(segment, line_no_, syntax_).parse()) return q;
    }
    return std::nullopt;
}

Dataset parse_nquads(std::istream& in, Syntax syntax) {
    Dataset out;
    NQuadsReader reader(in, syntax);
    while (auto q = reader.next()) out.push_back(std::move(*q));
    return out;
}

Dataset parse_nquads(std::string_view text, Syntax syntax) {
    std::istringstream in{std::string(text)};
    return parse_nquads(in, syntax);
}

void write_nquad(std::string& out, const Quad& q) {
    append_term(out, q.subject);
    out.push_back(' ');
    append_term(out, q.predicate);
    out.push_back(' ');
    append_term(out, q.object);
    if (q.graph) {
        out.push_back(' ');
        append_term(out, *q.graph);
    }
    out.append(" .\n");
}

void write_nquad(std::ostream& out, const Quad& q) {
    std::string line;
    write_nquad(line, q);
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
}

std::string serialize_nquads(const Dataset& quads) {
    std::string out;
    for (const auto& q : quads) write_nquad(out, q);
    return out;
}

}  // namespace trusty::rdf
