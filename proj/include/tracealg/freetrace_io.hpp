#pragma once

// Text form of trace polynomials: `x1*x2^2`, `tr(x1*x2)`, `1/2*tr(x)^2 - x`.
// A bare `x` means x1; polynomials in x1 alone are printed with `x`.

#include "tracealg/freetrace.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tracealg {

struct RenderOptions {
    /// Print x1 as `x` when it is the only variable.
    bool single_variable_as_x = true;
};

namespace detail {

inline void render_letters(std::ostringstream& os, const std::vector<Letter>& letters, bool bare_x)
{
    for (std::size_t i = 0; i < letters.size();) {
        std::size_t j = i;
        while (j < letters.size() && letters[j] == letters[i])
            ++j;
        if (i)
            os << '*';
        if (bare_x)
            os << 'x';
        else
            os << 'x' << letters[i];
        if (j - i > 1)
            os << '^' << (j - i);
        i = j;
    }
}

inline std::string render_key(const TraceKey& k, bool bare_x)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < k.traces.size();) {
        std::size_t j = i;
        while (j < k.traces.size() && k.traces[j] == k.traces[i])
            ++j;
        if (!first)
            os << '*';
        first = false;
        os << "tr(";
        if (k.traces[i].is_unit())
            os << '1';
        else
            render_letters(os, k.traces[i].representative().letters, bare_x);
        os << ')';
        if (j - i > 1)
            os << '^' << (j - i);
        i = j;
    }
    if (!k.word.empty()) {
        if (!first)
            os << '*';
        render_letters(os, k.word.letters, bare_x);
    }
    return os.str();
}

/// Display order: longer word part first, then word lex, then trace multiset.
inline bool display_before(const TraceKey& a, const TraceKey& b)
{
    if (a.word.length() != b.word.length())
        return a.word.length() > b.word.length();
    if (a.word != b.word)
        return a.word.letters < b.word.letters;
    return a.traces < b.traces;
}

} // namespace detail

inline std::string render(const TracePoly& p, const RenderOptions& opts = {})
{
    if (p.is_zero())
        return "0";
    auto vars = p.variables();
    bool bare_x = opts.single_variable_as_x && vars.size() == 1 && vars.front() == 1;

    std::vector<const std::pair<const TraceKey, Rational>*> terms;
    for (const auto& t : p.terms())
        terms.push_back(&t);
    std::stable_sort(terms.begin(), terms.end(),
                     [](auto* a, auto* b) { return detail::display_before(a->first, b->first); });

    std::ostringstream os;
    bool first = true;
    for (const auto* t : terms) {
        const Rational& c = t->second;
        Rational mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool unit = t->first.word.empty() && t->first.traces.empty();
        if (unit) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1)
            os << mag.get_str() << '*';
        os << detail::render_key(t->first, bare_x);
    }
    return os.str();
}

inline std::string render(const Word& w)
{
    if (w.empty())
        return "1";
    std::ostringstream os;
    detail::render_letters(os, w.letters, false);
    return os.str();
}

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::invalid_argument(what + " at offset " + std::to_string(pos)), pos_(pos)
    {
    }
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

namespace detail {

class TraceParser {
public:
    explicit TraceParser(std::string_view s) : s_(s) {}

    TracePoly parse_all()
    {
        TracePoly p = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return p;
    }

private:
    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    std::string digits()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            throw ParseError("expected a number", pos_);
        return std::string(s_.substr(start, pos_ - start));
    }

    TracePoly expr()
    {
        TracePoly acc;
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        TracePoly t = term();
        acc = negate ? -t : t;
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                break;
        }
        return acc;
    }

    TracePoly term()
    {
        TracePoly acc = power();
        while (accept('*'))
            acc = acc * power();
        return acc;
    }

    TracePoly power()
    {
        TracePoly base = atom();
        if (accept('^')) {
            auto e = digits();
            if (e.size() > 3)
                throw ParseError("exponent too large", pos_);
            base = base.pow(static_cast<unsigned>(std::stoul(e)));
        }
        return base;
    }

    TracePoly atom()
    {
        skip_ws();
        if (pos_ >= s_.size())
            throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            if (accept('/'))
                num += "/" + digits();
            return TracePoly(parse_rational(num));
        }
        if (c == '(') {
            ++pos_;
            TracePoly inner = expr();
            expect(')');
            return inner;
        }
        if (s_.substr(pos_, 2) == "tr") {
            pos_ += 2;
            expect('(');
            TracePoly inner = expr();
            expect(')');
            return formal_trace(inner);
        }
        if (c == 'x') {
            ++pos_;
            Letter v = 1;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                auto d = digits();
                if (d.size() > 9)
                    throw ParseError("variable index too large", pos_);
                v = static_cast<Letter>(std::stoul(d));
                if (v == 0)
                    throw ParseError("variable indices start at 1", pos_);
            }
            return TracePoly::variable(v);
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the rendering grammar back into a normal-form polynomial.
inline TracePoly parse_trace_poly(std::string_view text) { return detail::TraceParser(text).parse_all(); }

} // namespace tracealg
