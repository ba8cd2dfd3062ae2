#pragma once

// The free algebra with trace: noncommutative words, cyclic words as formal trace symbols,
// and exact-rational trace polynomials kept in a canonical normal form.

#include "tracealg/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tracealg {

/// Variable index of the free algebra; indices start at 1.
using Letter = std::uint32_t;

/// A noncommutative monomial. The empty word is 1.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    Word(std::initializer_list<Letter> l) : letters(l) {}
    explicit Word(std::vector<Letter> l) : letters(std::move(l)) {}

    std::size_t length() const noexcept { return letters.size(); }
    bool empty() const noexcept { return letters.empty(); }

    friend Word operator*(const Word& a, const Word& b)
    {
        Word w;
        w.letters.reserve(a.length() + b.length());
        w.letters.insert(w.letters.end(), a.letters.begin(), a.letters.end());
        w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
        return w;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

    /// Length first, then lexicographic.
    friend bool operator<(const Word& a, const Word& b)
    {
        if (a.length() != b.length())
            return a.length() < b.length();
        return a.letters < b.letters;
    }
};

/// Start index of the lexicographically least rotation (Booth).
inline std::size_t least_rotation(const std::vector<Letter>& s)
{
    const std::size_t n = s.size();
    if (n < 2)
        return 0;
    std::vector<long> fail(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        Letter sj = s[j % n];
        long i = fail[j - k - 1];
        while (i != -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
            if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n])
                k = j - static_cast<std::size_t>(i) - 1;
            i = fail[static_cast<std::size_t>(i)];
        }
        if (i == -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
            if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n])
                k = j;
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    return k % n;
}

/// Rotation class of a word, stored as its least rotation. The empty class is tr(1).
class CyclicWord {
public:
    CyclicWord() = default;

    explicit CyclicWord(const Word& w)
    {
        const auto& s = w.letters;
        std::size_t k = least_rotation(s);
        rep_.letters.reserve(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            rep_.letters.push_back(s[(k + i) % s.size()]);
    }

    const Word& representative() const noexcept { return rep_; }
    std::size_t length() const noexcept { return rep_.length(); }
    bool is_unit() const noexcept { return rep_.empty(); }

    friend bool operator==(const CyclicWord& a, const CyclicWord& b) { return a.rep_ == b.rep_; }
    friend bool operator<(const CyclicWord& a, const CyclicWord& b) { return a.rep_ < b.rep_; }

private:
    Word rep_;
};

inline CyclicWord normalize(const Word& w) { return CyclicWord(w); }

/// The non-coefficient part of a trace monomial: word times a sorted multiset of trace symbols.
struct TraceKey {
    Word word;
    std::vector<CyclicWord> traces; // sorted

    TraceKey() = default;
    TraceKey(Word w, std::vector<CyclicWord> t) : word(std::move(w)), traces(std::move(t))
    {
        std::sort(traces.begin(), traces.end());
    }

    bool is_pure_trace() const noexcept { return word.empty(); }

    friend bool operator==(const TraceKey& a, const TraceKey& b)
    {
        return a.word == b.word && a.traces == b.traces;
    }

    friend bool operator<(const TraceKey& a, const TraceKey& b)
    {
        if (a.word != b.word)
            return a.word < b.word;
        return a.traces < b.traces;
    }

    friend TraceKey operator*(const TraceKey& a, const TraceKey& b)
    {
        TraceKey k;
        k.word = a.word * b.word;
        k.traces.reserve(a.traces.size() + b.traces.size());
        std::merge(a.traces.begin(), a.traces.end(), b.traces.begin(), b.traces.end(),
                   std::back_inserter(k.traces));
        return k;
    }
};

/// One term c * word * prod tr(m_i).
struct TraceMonomial {
    Rational coefficient;
    TraceKey key;
};

/// Element of the free algebra with trace over Q, in normal form.
class TracePoly {
public:
    using Terms = std::map<TraceKey, Rational>;

    TracePoly() = default;
    TracePoly(int c) : TracePoly(Rational(c)) {}
    TracePoly(const Rational& c)
    {
        if (c != 0)
            terms_.emplace(TraceKey{}, c);
    }

    static TracePoly variable(Letter v)
    {
        if (v == 0)
            throw std::invalid_argument("variable indices start at 1");
        return monomial(Rational(1), Word{v}, {});
    }

    static TracePoly word(const Word& w) { return monomial(Rational(1), w, {}); }

    /// The formal trace symbol tr(w).
    static TracePoly trace_of(const Word& w) { return monomial(Rational(1), Word{}, {CyclicWord(w)}); }

    static TracePoly monomial(const Rational& c, const Word& w, std::vector<CyclicWord> traces)
    {
        TracePoly p;
        p.add_term(TraceKey(w, std::move(traces)), c);
        return p;
    }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_pure_trace() const noexcept
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.is_pure_trace(); });
    }

    Rational coefficient(const TraceKey& k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const TraceKey& k, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    /// Sorted list of variables occurring anywhere, including inside trace symbols.
    std::vector<Letter> variables() const
    {
        std::set<Letter> vs;
        for (const auto& [k, c] : terms_) {
            vs.insert(k.word.letters.begin(), k.word.letters.end());
            for (const auto& t : k.traces)
                vs.insert(t.representative().letters.begin(), t.representative().letters.end());
        }
        return {vs.begin(), vs.end()};
    }

    TracePoly& operator+=(const TracePoly& o)
    {
        for (const auto& [k, c] : o.terms_)
            add_term(k, c);
        return *this;
    }

    TracePoly& operator-=(const TracePoly& o)
    {
        for (const auto& [k, c] : o.terms_)
            add_term(k, -c);
        return *this;
    }

    TracePoly& operator*=(const TracePoly& o) { return *this = *this * o; }

    TracePoly operator-() const { return *this * Rational(-1); }

    friend TracePoly operator+(TracePoly a, const TracePoly& b) { return a += b; }
    friend TracePoly operator-(TracePoly a, const TracePoly& b) { return a -= b; }

    /// Bilinear product: words concatenate, trace factors commute and merge.
    friend TracePoly operator*(const TracePoly& a, const TracePoly& b)
    {
        TracePoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ka * kb, ca * cb);
        return r;
    }

    friend TracePoly operator*(TracePoly a, const Rational& s)
    {
        if (s == 0)
            return TracePoly{};
        for (auto& [k, c] : a.terms_)
            c *= s;
        return a;
    }
    friend TracePoly operator*(const Rational& s, TracePoly a) { return std::move(a) * s; }

    friend bool operator==(const TracePoly& a, const TracePoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TracePoly& a, const TracePoly& b) { return !(a == b); }

    TracePoly pow(unsigned e) const
    {
        TracePoly r(1);
        for (unsigned i = 0; i < e; ++i)
            r = r * *this;
        return r;
    }

private:
    Terms terms_;
};

inline TracePoly mul(const TracePoly& p, const TracePoly& q) { return p * q; }

/// Linear extension of c*w*prod tr(m_i) -> c*prod tr(m_i)*tr(w).
inline TracePoly formal_trace(const TracePoly& p)
{
    TracePoly r;
    for (const auto& [k, c] : p.terms()) {
        auto traces = k.traces;
        traces.push_back(CyclicWord(k.word));
        r.add_term(TraceKey(Word{}, std::move(traces)), c);
    }
    return r;
}

/// Raised by substitute when a variable has no image.
class UnmappedVariable : public std::invalid_argument {
public:
    explicit UnmappedVariable(Letter v)
        : std::invalid_argument("substitution does not map variable x" + std::to_string(v)), var_(v)
    {
    }
    Letter variable() const noexcept { return var_; }

private:
    Letter var_;
};

/// The trace-compatible endomorphism determined by images of the variables.
inline TracePoly substitute(const TracePoly& p, const std::map<Letter, TracePoly>& images)
{
    std::map<Word, TracePoly> word_cache;
    std::map<CyclicWord, TracePoly> trace_cache;

    auto word_image = [&](const Word& w) -> const TracePoly& {
        auto it = word_cache.find(w);
        if (it != word_cache.end())
            return it->second;
        TracePoly img(1);
        for (Letter l : w.letters) {
            auto m = images.find(l);
            if (m == images.end())
                throw UnmappedVariable(l);
            img = img * m->second;
        }
        return word_cache.emplace(w, std::move(img)).first->second;
    };

    TracePoly r;
    for (const auto& [k, c] : p.terms()) {
        TracePoly t(c);
        for (const auto& tr : k.traces) {
            auto it = trace_cache.find(tr);
            if (it == trace_cache.end())
                it = trace_cache.emplace(tr, formal_trace(word_image(tr.representative()))).first;
            t = t * it->second;
        }
        t = t * word_image(k.word);
        r += t;
    }
    return r;
}

/// Number of occurrences of each variable in a key, counting letters inside trace symbols.
inline std::map<Letter, unsigned> letter_counts(const TraceKey& k)
{
    std::map<Letter, unsigned> counts;
    for (Letter l : k.word.letters)
        ++counts[l];
    for (const auto& t : k.traces)
        for (Letter l : t.representative().letters)
            ++counts[l];
    return counts;
}

inline unsigned total_degree(const TraceKey& k)
{
    unsigned d = static_cast<unsigned>(k.word.length());
    for (const auto& t : k.traces)
        d += static_cast<unsigned>(t.length());
    return d;
}

} // namespace tracealg
