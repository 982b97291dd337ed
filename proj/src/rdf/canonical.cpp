#include "trusty/rdf/canonical.hpp"

#include "trusty/error.hpp"

#include <stdexcept>

namespace trusty::rdf {

namespace {

void append_iri(std::string& out, std::string_view iri, std::string_view blank_code) {
    if (blank_code.empty()) {
        out.append(iri);
        return;
    }
    std::size_t from = 0;
    for (auto at = iri.find(blank_code); at != std::string_view::npos;
         at = iri.find(blank_code, from)) {
        out.append(iri.substr(from, at - from));
        out.push_back(' ');
        from = at + blank_code.size();
    }
    out.append(iri.substr(from));
}

void append_node(std::string& out, const Term& t, std::string_view blank_code) {
    switch (t.kind()) {
        case TermKind::iri:
            append_iri(out, t.value(), blank_code);
            break;
        case TermKind::blank_node:
            throw std::invalid_argument("canonical serialization requires Skolemized input, found _:" +
                                        t.value());
        case TermKind::literal: {
            out.push_back('"');
            std::string_view text = t.value();
            std::size_t run = 0;
            for (std::size_t i = 0; i < text.size(); ++i) {
                const char* esc = nullptr;
                switch (text[i]) {
                    case '\\': esc = "\\\\"; break;
                    case '"': esc = "\\\""; break;
                    case '\n': esc = "\\n"; break;
                    case '\r': esc = "\\r"; break;
                    default: continue;
                }
                out.append(text.substr(run, i - run));
                out.append(esc);
                run = i + 1;
            }
            out.append(text.substr(run));
            out.push_back('"');
            if (!t.language().empty()) {
                out.push_back('@');
                out.append(t.language());
            } else if (!t.datatype().empty()) {
                out.append("^^");
                out.append(t.datatype());
            }
            break;
        }
    }
    out.push_back('\n');
}

Term decode_node(std::string_view line) {
    if (line.empty()) throw Error("empty term line in canonical group");
    if (line.front() != '"') return Term::iri(std::string(line));

    auto close = line.rfind('"');
    if (close == 0) throw Error("unterminated literal in canonical group");
    std::string lexical;
    auto body = line.substr(1, close - 1);
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] != '\\') {
            lexical.push_back(body[i]);
            continue;
        }
        if (++i == body.size()) throw Error("dangling escape in canonical group");
        switch (body[i]) {
            case '\\': lexical.push_back('\\'); break;
            case '"': lexical.push_back('"'); break;
            case 'n': lexical.push_back('\n'); break;
            case 'r': lexical.push_back('\r'); break;
            default: throw Error("unknown escape in canonical group");
        }
    }
    auto suffix = line.substr(close + 1);
    if (suffix.empty()) return Term::literal(std::move(lexical));
    if (suffix.front() == '@') return Term::lang_literal(std::move(lexical), suffix.substr(1));
    if (suffix.starts_with("^^")) return Term::typed_literal(std::move(lexical), std::string(suffix.substr(2)));
    throw Error("bad literal suffix in canonical group");
}

}  // namespace

void append_line_group(std::string& out, const Quad& q, std::string_view blank_code) {
    if (q.graph) {
        append_node(out, *q.graph, blank_code);
    } else {
        out.push_back('\n');
    }
    append_node(out, q.subject, blank_code);
    append_node(out, q.predicate, blank_code);
    append_node(out, q.object, blank_code);
}

std::string line_group(const Quad& q, std::string_view blank_code) {
    std::string out;
    append_line_group(out, q, blank_code);
    return out;
}

Quad decode_line_group(std::string_view group) {
    std::string_view lines[4];
    for (auto& line : lines) {
        auto nl = group.find('\n');
        if (nl == std::string_view::npos) throw Error("truncated canonical group");
        line = group.substr(0, nl);
        group.remove_prefix(nl + 1);
    }
    if (!group.empty()) throw Error("trailing bytes after canonical group");
    Quad q;
    if (!lines[0].empty()) q.graph = Term::iri(std::string(lines[0]));
    q.subject = Term::iri(std::string(lines[1]));
    q.predicate = Term::iri(std::string(lines[2]));
    q.object = decode_node(lines[3]);
    return q;
}

std::strong_ordering compare_quads(const Quad& a, const Quad& b) {
    auto ga = line_group(a);
    auto gb = line_group(b);
    // char_traits<char> compares as unsigned char, which is code-point order for UTF-8.
    int c = std::string_view(ga).compare(gb);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

}  // namespace trusty::rdf
