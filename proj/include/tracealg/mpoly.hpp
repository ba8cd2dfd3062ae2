#pragma once

// Sparse commutative multivariate polynomials with exact rational coefficients.

#include "tracealg/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tracealg {

/// Variable identifier. Ids with the top bit set are generic-matrix entries; the rest are free for callers.
using Var = std::uint32_t;

constexpr Var generic_entry_var(std::uint32_t matrix, std::uint32_t row, std::uint32_t col)
{
    return (Var{1} << 31) | (matrix << 16) | (row << 8) | col;
}

constexpr bool is_generic_entry(Var v) { return (v >> 31) != 0; }
constexpr std::uint32_t generic_entry_matrix(Var v) { return (v >> 16) & 0x7fffu; }
constexpr std::uint32_t generic_entry_row(Var v) { return (v >> 8) & 0xffu; }
constexpr std::uint32_t generic_entry_col(Var v) { return v & 0xffu; }

/// A monomial: (variable, exponent) pairs sorted by variable, all exponents positive.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(Var v, std::uint32_t e = 1)
    {
        if (e > 0)
            factors_.emplace_back(v, e);
    }

    const std::vector<std::pair<Var, std::uint32_t>>& factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }

    std::uint32_t degree() const noexcept
    {
        std::uint32_t d = 0;
        for (const auto& f : factors_)
            d += f.second;
        return d;
    }

    std::uint32_t degree_in(Var v) const noexcept
    {
        for (const auto& f : factors_)
            if (f.first == v)
                return f.second;
        return 0;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial m;
        m.factors_.reserve(a.factors_.size() + b.factors_.size());
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() || j != b.factors_.end()) {
            if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first))
                m.factors_.push_back(*i++);
            else if (i == a.factors_.end() || j->first < i->first)
                m.factors_.push_back(*j++);
            else {
                m.factors_.emplace_back(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        return m;
    }

    /// Graded order: total degree, then lexicographic on the factor list.
    friend bool operator<(const Monomial& a, const Monomial& b)
    {
        auto da = a.degree(), db = b.degree();
        if (da != db)
            return da < db;
        return a.factors_ < b.factors_;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

private:
    std::vector<std::pair<Var, std::uint32_t>> factors_;
};

using VarNamer = std::function<std::string(Var)>;

inline std::string default_var_name(Var v)
{
    if (is_generic_entry(v)) {
        std::ostringstream os;
        os << "g" << generic_entry_matrix(v) << "_" << generic_entry_row(v) + 1 << "_" << generic_entry_col(v) + 1;
        return os.str();
    }
    return "z" + std::to_string(v);
}

/// Polynomial in commuting variables over Q. Zero coefficients are never stored.
class MPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    MPoly() = default;
    MPoly(int c) : MPoly(Rational(c)) {}
    MPoly(const Rational& c)
    {
        if (c != 0)
            terms_.emplace(Monomial{}, c);
    }

    static MPoly variable(Var v) { return term(Monomial(v), Rational(1)); }

    static MPoly term(const Monomial& m, const Rational& c)
    {
        MPoly p;
        if (c != 0)
            p.terms_.emplace(m, c);
        return p;
    }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_constant() const noexcept
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    Rational constant_term() const
    {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::uint32_t total_degree() const noexcept
    {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, m.degree());
        return d;
    }

    std::uint32_t degree_in(Var v) const noexcept
    {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, m.degree_in(v));
        return d;
    }

    std::vector<Var> variables() const
    {
        std::vector<Var> vs;
        for (const auto& [m, c] : terms_)
            for (const auto& f : m.factors())
                vs.push_back(f.first);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    void add_term(const Monomial& m, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    MPoly& operator+=(const MPoly& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }

    MPoly& operator-=(const MPoly& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }

    MPoly& operator*=(const MPoly& o)
    {
        *this = *this * o;
        return *this;
    }

    MPoly operator-() const
    {
        MPoly r = *this;
        for (auto& [m, c] : r.terms_)
            c = -c;
        return r;
    }

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }

    friend MPoly operator*(const MPoly& a, const MPoly& b)
    {
        MPoly r;
        if (a.is_zero() || b.is_zero())
            return r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term(ma * mb, ca * cb);
        return r;
    }

    friend MPoly operator*(MPoly a, const Rational& s)
    {
        if (s == 0)
            return MPoly{};
        for (auto& [m, c] : a.terms_)
            c *= s;
        return a;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly pow(std::uint32_t e) const
    {
        MPoly r(1), base = *this;
        while (e) {
            if (e & 1u)
                r *= base;
            e >>= 1;
            if (e)
                base *= base;
        }
        return r;
    }

    /// Evaluates at a point; variables missing from the map are an error.
    Rational evaluate(const std::map<Var, Rational>& point) const
    {
        Rational s = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (const auto& [v, e] : m.factors()) {
                auto it = point.find(v);
                if (it == point.end())
                    throw std::invalid_argument("evaluation point misses variable " + default_var_name(v));
                Rational p;
                mpz_pow_ui(p.get_num_mpz_t(), it->second.get_num_mpz_t(), e);
                mpz_pow_ui(p.get_den_mpz_t(), it->second.get_den_mpz_t(), e);
                t *= p;
            }
            s += t;
        }
        return s;
    }

    /// Replaces the listed variables by polynomials; other variables are kept.
    MPoly substitute(const std::map<Var, MPoly>& images) const
    {
        MPoly r;
        std::map<std::pair<Var, std::uint32_t>, MPoly> powers;
        for (const auto& [m, c] : terms_) {
            MPoly t(c);
            Monomial kept;
            for (const auto& f : m.factors()) {
                auto it = images.find(f.first);
                if (it == images.end()) {
                    kept = kept * Monomial(f.first, f.second);
                    continue;
                }
                auto pit = powers.find(f);
                if (pit == powers.end())
                    pit = powers.emplace(f, it->second.pow(f.second)).first;
                t *= pit->second;
            }
            if (!kept.is_one())
                t *= term(kept, Rational(1));
            r += t;
        }
        return r;
    }

    /// Multiplies by the positive rational making all coefficients coprime integers.
    MPoly primitive() const
    {
        if (is_zero())
            return *this;
        Integer den = 1, num = 0;
        for (const auto& [m, c] : terms_) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
        }
        return *this * make_rational(den, num);
    }

    std::string to_string(const VarNamer& namer = default_var_name) const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rational mag = abs(c);
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            first = false;
            bool need_star = false;
            if (m.is_one() || mag != 1) {
                os << mag.get_str();
                need_star = true;
            }
            for (const auto& [v, e] : m.factors()) {
                os << (need_star ? "*" : "") << namer(v);
                if (e > 1)
                    os << "^" << e;
                need_star = true;
            }
        }
        return os.str();
    }

private:
    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.to_string(); }

/// Univariate view: coefficients of powers of v, each an MPoly in the remaining variables.
inline std::vector<MPoly> coefficients_in(const MPoly& p, Var v)
{
    std::vector<MPoly> coeffs(p.degree_in(v) + 1);
    for (const auto& [m, c] : p.terms()) {
        Monomial rest;
        std::uint32_t e = 0;
        for (const auto& f : m.factors()) {
            if (f.first == v)
                e = f.second;
            else
                rest = rest * Monomial(f.first, f.second);
        }
        coeffs[e].add_term(rest, c);
    }
    return coeffs;
}

} // namespace tracealg
