/**
 * Text polytope files.
 *
 *     # comment
 *     polytope NAME
 *     dim N
 *     vertices M
 *     <M lines of N integers>
 *     end
 *
 * One vertex per line. Blank lines and lines starting with '#' are ignored
 * everywhere; surrounding whitespace is ignored.
 */
#pragma once

#include <cstddef>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reflex/exact.hpp"

namespace reflex {

class ParseError : public std::runtime_error
{
    public:
        ParseError(std::size_t line, std::size_t column, const std::string& reason)
            : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + reason),
              line_(line), column_(column), reason_(reason)
        {
        }

        std::size_t line() const { return line_; }
        std::size_t column() const { return column_; }
        const std::string& reason() const { return reason_; }

    private:
        std::size_t line_;
        std::size_t column_;
        std::string reason_;
};

struct PolytopeEntry
{
    std::string name;
    std::size_t dim = 0;
    std::vector<IntVector> vertices;
    std::size_t line = 0;   // line of the "polytope" keyword

    bool operator==(const PolytopeEntry& o) const
    {
        return name == o.name && dim == o.dim && vertices == o.vertices;
    }
};

struct PolytopeFile
{
    std::vector<PolytopeEntry> entries;

    const PolytopeEntry* find(const std::string& name) const
    {
        for (const auto& e : entries)
            if (e.name == name)
                return &e;
        return nullptr;
    }
};

namespace detail {

struct Token
{
    std::string text;
    std::size_t column;   // 1-based
};

inline std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        if (i == line.size())
            break;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
            ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

inline bool is_integer_token(const std::string& s)
{
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            return false;
    return true;
}

inline std::size_t parse_count(const Token& t, std::size_t line, const char* what)
{
    if (!is_integer_token(t.text) || t.text[0] == '-')
        throw ParseError(line, t.column, std::string("expected a nonnegative integer for ") + what + ", got '"
                                             + t.text + "'");
    try {
        return static_cast<std::size_t>(std::stoull(t.text));
    } catch (const std::exception&) {
        throw ParseError(line, t.column, std::string(what) + " out of range");
    }
}

} // namespace detail

inline PolytopeFile parse(std::string_view contents)
{
    enum class State { top, want_dim, want_vertices, rows, want_end };
    PolytopeFile out;
    std::set<std::string> names;
    State state = State::top;
    PolytopeEntry cur;
    std::size_t expected_rows = 0;
    std::size_t line_no = 0;

    std::size_t pos = 0;
    while (pos <= contents.size()) {
        std::size_t nl = contents.find('\n', pos);
        std::string_view line = contents.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? contents.size() + 1 : nl + 1;
        ++line_no;

        auto toks = detail::tokenize(line);
        if (toks.empty() || toks[0].text[0] == '#')
            continue;
        const detail::Token& head = toks[0];
        auto expect_arity = [&](std::size_t k) {
            if (toks.size() != k)
                throw ParseError(line_no, toks[std::min(k, toks.size() - 1)].column,
                                 "'" + head.text + "' expects " + std::to_string(k - 1) + " argument(s)");
        };

        switch (state) {
            case State::top:
                if (head.text != "polytope")
                    throw ParseError(line_no, head.column, "expected 'polytope', got '" + head.text + "'");
                expect_arity(2);
                if (!names.insert(toks[1].text).second)
                    throw ParseError(line_no, toks[1].column, "duplicate polytope name '" + toks[1].text + "'");
                cur = PolytopeEntry{};
                cur.name = toks[1].text;
                cur.line = line_no;
                state = State::want_dim;
                break;
            case State::want_dim:
                if (head.text != "dim")
                    throw ParseError(line_no, head.column, "expected 'dim', got '" + head.text + "'");
                expect_arity(2);
                cur.dim = detail::parse_count(toks[1], line_no, "dim");
                state = State::want_vertices;
                break;
            case State::want_vertices:
                if (head.text != "vertices")
                    throw ParseError(line_no, head.column, "expected 'vertices', got '" + head.text + "'");
                expect_arity(2);
                expected_rows = detail::parse_count(toks[1], line_no, "vertices");
                state = expected_rows == 0 ? State::want_end : State::rows;
                break;
            case State::rows: {
                if (head.text == "end")
                    throw ParseError(line_no, head.column,
                                     "'end' after " + std::to_string(cur.vertices.size()) + " of "
                                         + std::to_string(expected_rows) + " vertex rows");
                if (toks.size() != cur.dim)
                    throw ParseError(line_no, toks.size() > cur.dim ? toks[cur.dim].column : line.size() + 1,
                                     "vertex row has " + std::to_string(toks.size()) + " entries, expected "
                                         + std::to_string(cur.dim));
                IntVector row;
                for (const auto& t : toks) {
                    if (!detail::is_integer_token(t.text))
                        throw ParseError(line_no, t.column, "non-integer token '" + t.text + "'");
                    row.emplace_back(t.text[0] == '+' ? t.text.substr(1) : t.text);
                }
                cur.vertices.push_back(std::move(row));
                if (cur.vertices.size() == expected_rows)
                    state = State::want_end;
                break;
            }
            case State::want_end:
                if (head.text != "end")
                    throw ParseError(line_no, head.column, "expected 'end', got '" + head.text + "'");
                expect_arity(1);
                out.entries.push_back(std::move(cur));
                state = State::top;
                break;
        }
    }
    if (state != State::top)
        throw ParseError(line_no, 1, "unexpected end of input in polytope '" + cur.name + "' (missing 'end')");
    return out;
}

inline std::string format_entry(const PolytopeEntry& e)
{
    std::ostringstream os;
    os << "polytope " << e.name << "\n" << "dim " << e.dim << "\n" << "vertices " << e.vertices.size() << "\n";
    for (const auto& v : e.vertices) {
        for (std::size_t i = 0; i < v.size(); ++i)
            os << (i ? " " : "") << v[i];
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

inline std::string format_file(const PolytopeFile& f)
{
    std::string out;
    for (std::size_t i = 0; i < f.entries.size(); ++i) {
        if (i)
            out += "\n";
        out += format_entry(f.entries[i]);
    }
    return out;
}

} // namespace reflex
