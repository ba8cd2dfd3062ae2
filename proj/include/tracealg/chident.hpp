#pragma once

// Cayley-Hamilton polynomials and their multilinear forms in the free algebra with trace.

#include "tracealg/freetrace.hpp"
#include "tracealg/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace tracealg {

/// Polynomial in commuting power-sum symbols psi_1, psi_2, ...; psi_j is the variable with id j.
using SymFnPoly = MPoly;

inline SymFnPoly psi(unsigned j) { return MPoly::variable(static_cast<Var>(j)); }

/// e_0..e_k in terms of power sums, from (m+1)e_{m+1} = (-1)^m psi_{m+1} + sum_i (-1)^{i-1} psi_i e_{m+1-i}.
inline std::vector<SymFnPoly> elementary_table(unsigned k)
{
    std::vector<SymFnPoly> e{SymFnPoly(1)};
    for (unsigned m = 0; m < k; ++m) {
        SymFnPoly next = psi(m + 1) * Rational(m % 2 == 0 ? 1 : -1);
        for (unsigned i = 1; i <= m; ++i)
            next += psi(i) * e[m + 1 - i] * Rational(i % 2 == 1 ? 1 : -1);
        e.push_back(next * Rational(1, m + 1));
    }
    return e;
}

inline SymFnPoly elementary_from_powersums(int k)
{
    if (k <= 0)
        throw std::invalid_argument("elementary_from_powersums needs k >= 1");
    return elementary_table(static_cast<unsigned>(k)).back();
}

/// Replaces psi_j by tr(x^j) with x the given variable.
inline TracePoly powersums_to_traces(const SymFnPoly& f, Letter x = 1)
{
    TracePoly r;
    for (const auto& [m, c] : f.terms()) {
        std::vector<CyclicWord> traces;
        for (const auto& [j, e] : m.factors())
            for (std::uint32_t r2 = 0; r2 < e; ++r2)
                traces.emplace_back(Word(std::vector<Letter>(j, x)));
        r.add_term(TraceKey(Word{}, std::move(traces)), c);
    }
    return r;
}

/// sigma_i(x) as a pure trace polynomial in x = x1.
inline TracePoly sigma(int i)
{
    if (i < 1)
        throw std::invalid_argument("sigma needs i >= 1");
    return powersums_to_traces(elementary_from_powersums(i));
}

/// CH_n(x) = x^n + sum_{i=1}^n (-1)^i sigma_i(x) x^{n-i}.
inline TracePoly ch_poly(int n)
{
    if (n < 1)
        throw std::invalid_argument("ch_poly needs n >= 1");
    auto e = elementary_table(static_cast<unsigned>(n));
    TracePoly r = TracePoly::word(Word(std::vector<Letter>(static_cast<std::size_t>(n), 1)));
    for (int i = 1; i <= n; ++i) {
        TracePoly xi = TracePoly::word(Word(std::vector<Letter>(static_cast<std::size_t>(n - i), 1)));
        r += powersums_to_traces(e[static_cast<std::size_t>(i)]) * xi * Rational(i % 2 == 0 ? 1 : -1);
    }
    return r;
}

/// A permutation of {1..k} as disjoint cycles. Each cycle (i1 i2 ... ih) maps i1 -> i2 -> ... -> i1.
class PermCycles {
public:
    /// From one-line notation: image[i-1] = sigma(i).
    static PermCycles from_one_line(const std::vector<unsigned>& image)
    {
        PermCycles p;
        p.size_ = static_cast<unsigned>(image.size());
        std::vector<bool> seen(image.size() + 1, false);
        for (unsigned i = 1; i <= p.size_; ++i) {
            if (image[i - 1] < 1 || image[i - 1] > p.size_ || std::count(image.begin(), image.end(), image[i - 1]) != 1)
                throw std::invalid_argument("not a permutation");
            if (seen[i])
                continue;
            std::vector<unsigned> cyc;
            for (unsigned j = i; !seen[j]; j = image[j - 1]) {
                seen[j] = true;
                cyc.push_back(j);
            }
            p.cycles_.push_back(std::move(cyc));
        }
        std::size_t covered = 0;
        for (const auto& c : p.cycles_)
            covered += c.size();
        if (covered != image.size())
            throw std::invalid_argument("not a permutation");
        return p;
    }

    static PermCycles from_cycles(unsigned k, std::vector<std::vector<unsigned>> cycles)
    {
        std::vector<unsigned> image(k, 0);
        for (const auto& c : cycles)
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i] < 1 || c[i] > k || image[c[i] - 1] != 0)
                    throw std::invalid_argument("cycles do not partition {1..k}");
                image[c[i] - 1] = c[(i + 1) % c.size()];
            }
        for (unsigned i = 0; i < k; ++i)
            if (image[i] == 0)
                image[i] = i + 1;
        return from_one_line(image);
    }

    unsigned size() const noexcept { return size_; }
    const std::vector<std::vector<unsigned>>& cycles() const noexcept { return cycles_; }

    /// (-1)^(k - #cycles)
    int sign() const noexcept { return ((size_ - cycles_.size()) % 2 == 0) ? 1 : -1; }

private:
    unsigned size_ = 0;
    std::vector<std::vector<unsigned>> cycles_;
};

/// Calls f(PermCycles) for every permutation of {1..k} in lexicographic one-line order.
template <class F>
void for_each_permutation(unsigned k, F&& f)
{
    std::vector<unsigned> image(k);
    std::iota(image.begin(), image.end(), 1u);
    do {
        f(PermCycles::from_one_line(image));
    } while (std::next_permutation(image.begin(), image.end()));
}

inline Word cycle_word(const std::vector<unsigned>& cycle)
{
    return Word(std::vector<Letter>(cycle.begin(), cycle.end()));
}

/// T_sigma(x1..xk): one trace symbol per cycle.
inline TracePoly t_sigma(const PermCycles& s)
{
    std::vector<CyclicWord> traces;
    for (const auto& c : s.cycles())
        traces.emplace_back(cycle_word(c));
    return TracePoly::monomial(Rational(1), Word{}, std::move(traces));
}

/// T_k = sum over S_k of sign * T_sigma.
inline TracePoly t_multilinear(int k)
{
    if (k < 1)
        throw std::invalid_argument("t_multilinear needs k >= 1");
    TracePoly r;
    for_each_permutation(static_cast<unsigned>(k),
                         [&](const PermCycles& s) { r += t_sigma(s) * Rational(s.sign()); });
    return r;
}

/// psi_sigma(x1..xk) for sigma in S_{k+1}: the cycle through k+1, rotated to end there,
/// contributes the word with x_{k+1} removed; the other cycles contribute traces.
inline TracePoly psi_sigma(const PermCycles& s)
{
    const unsigned last = s.size();
    std::vector<CyclicWord> traces;
    Word w;
    for (const auto& c : s.cycles()) {
        auto it = std::find(c.begin(), c.end(), last);
        if (it == c.end()) {
            traces.emplace_back(cycle_word(c));
            continue;
        }
        std::vector<Letter> rotated;
        for (auto j = std::next(it); j != c.end(); ++j)
            rotated.push_back(*j);
        for (auto j = c.begin(); j != it; ++j)
            rotated.push_back(*j);
        w = Word(std::move(rotated));
    }
    return TracePoly::monomial(Rational(1), w, std::move(traces));
}

/// CH(x1..xn) = (-1)^n sum over S_{n+1} of sign * psi_sigma.
inline TracePoly ch_multilinear(int n)
{
    if (n < 1)
        throw std::invalid_argument("ch_multilinear needs n >= 1");
    TracePoly r;
    for_each_permutation(static_cast<unsigned>(n + 1),
                         [&](const PermCycles& s) { r += psi_sigma(s) * Rational(s.sign()); });
    return (n % 2 == 0) ? r : -r;
}

class NotHomogeneous : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Full polarization of a homogeneous one-variable polynomial of degree k: the part of
/// p(x1 + ... + xk) that is linear in each xi. Setting all xi = x gives k! * p.
inline TracePoly polarize(const TracePoly& p)
{
    auto vars = p.variables();
    if (vars.size() > 1)
        throw std::invalid_argument("polarize expects a polynomial in one variable");
    if (p.is_zero())
        return p;
    unsigned k = total_degree(p.terms().begin()->first);
    for (const auto& [key, c] : p.terms())
        if (total_degree(key) != k)
            throw NotHomogeneous("polarize expects a homogeneous polynomial");

    TracePoly r;
    std::vector<unsigned> image(k);
    for (const auto& [key, c] : p.terms()) {
        std::iota(image.begin(), image.end(), 1u);
        do {
            std::size_t pos = 0;
            std::vector<Letter> word;
            for (std::size_t i = 0; i < key.word.length(); ++i)
                word.push_back(image[pos++]);
            std::vector<CyclicWord> traces;
            for (const auto& t : key.traces) {
                std::vector<Letter> letters;
                for (std::size_t i = 0; i < t.length(); ++i)
                    letters.push_back(image[pos++]);
                traces.emplace_back(Word(std::move(letters)));
            }
            r.add_term(TraceKey(Word(std::move(word)), std::move(traces)), c);
        } while (std::next_permutation(image.begin(), image.end()));
    }
    return r;
}

/// Sets every variable of p to x1.
inline TracePoly restitute(const TracePoly& p)
{
    std::map<Letter, TracePoly> images;
    for (Letter v : p.variables())
        images.emplace(v, TracePoly::variable(1));
    return substitute(p, images);
}

} // namespace tracealg
