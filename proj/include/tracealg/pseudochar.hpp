#pragma once

// Degree-n pseudocharacters of finite groups given by multiplication tables.

#include "tracealg/chident.hpp"
#include "tracealg/findim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracealg {

class GroupError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FiniteGroup {
    std::size_t order = 0;
    std::vector<std::vector<std::size_t>> table;
    std::size_t identity = 0;
    std::vector<std::size_t> inverse;
    std::vector<std::string> names;

    std::size_t mul(std::size_t a, std::size_t b) const { return table[a][b]; }

    std::string name(std::size_t g) const { return names.empty() ? "g" + std::to_string(g) : names[g]; }
};

/// Validates the Latin-square property, the identity and associativity.
inline FiniteGroup make_group(std::vector<std::vector<std::size_t>> table, std::size_t identity,
                              std::vector<std::string> names = {})
{
    const std::size_t g = table.size();
    if (g == 0)
        throw GroupError("group must have at least one element");
    if (identity >= g)
        throw GroupError("identity index out of range");
    if (!names.empty() && names.size() != g)
        throw GroupError("one name per element is required");
    for (std::size_t a = 0; a < g; ++a) {
        if (table[a].size() != g)
            throw GroupError("multiplication table row " + std::to_string(a) + " has the wrong length");
        std::vector<bool> seen(g, false);
        for (std::size_t b = 0; b < g; ++b) {
            if (table[a][b] >= g)
                throw GroupError("table entry out of range in row " + std::to_string(a));
            if (seen[table[a][b]])
                throw GroupError("row " + std::to_string(a) + " repeats an element: not a Latin square");
            seen[table[a][b]] = true;
        }
    }
    for (std::size_t b = 0; b < g; ++b) {
        std::vector<bool> seen(g, false);
        for (std::size_t a = 0; a < g; ++a) {
            if (seen[table[a][b]])
                throw GroupError("column " + std::to_string(b) + " repeats an element: not a Latin square");
            seen[table[a][b]] = true;
        }
    }
    for (std::size_t a = 0; a < g; ++a)
        if (table[identity][a] != a || table[a][identity] != a)
            throw GroupError("identity law fails on element " + std::to_string(a));
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b)
            for (std::size_t c = 0; c < g; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw GroupError("not associative at (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                                     std::to_string(c) + ")");
    FiniteGroup G;
    G.order = g;
    G.table = std::move(table);
    G.identity = identity;
    G.names = std::move(names);
    G.inverse.assign(g, 0);
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b)
            if (G.table[a][b] == identity)
                G.inverse[a] = b;
    return G;
}

/// Group of permutations of {0..k-1} closed under composition, generated by the given permutations.
/// Element 0 is the identity; elements are ordered by discovery (breadth first).
inline FiniteGroup permutation_group(std::size_t k, const std::vector<std::vector<std::size_t>>& generators)
{
    std::vector<std::size_t> id(k);
    std::iota(id.begin(), id.end(), 0u);
    std::vector<std::vector<std::size_t>> elems{id};
    std::map<std::vector<std::size_t>, std::size_t> index{{id, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& gen : generators) {
            std::vector<std::size_t> p(k);
            for (std::size_t x = 0; x < k; ++x)
                p[x] = elems[i][gen[x]];
            if (index.emplace(p, elems.size()).second)
                elems.push_back(p);
        }
    const std::size_t g = elems.size();
    std::vector<std::vector<std::size_t>> table(g, std::vector<std::size_t>(g));
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b) {
            std::vector<std::size_t> p(k);
            for (std::size_t x = 0; x < k; ++x)
                p[x] = elems[a][elems[b][x]];
            table[a][b] = index.at(p);
        }
    return make_group(std::move(table), 0);
}

inline FiniteGroup cyclic_group(std::size_t n)
{
    if (n < 1)
        throw GroupError("cyclic group order must be positive");
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            table[a][b] = (a + b) % n;
    return make_group(std::move(table), 0);
}

/// Elements (a, b) are indexed a * |H| + b.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h)
{
    const std::size_t n = g.order * h.order;
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            table[x][y] = g.mul(x / h.order, y / h.order) * h.order + h.mul(x % h.order, y % h.order);
    return make_group(std::move(table), g.identity * h.order + h.identity);
}

/// Symmetries of a regular k-gon, order 2k.
inline FiniteGroup dihedral_group(std::size_t k)
{
    if (k < 1)
        throw GroupError("dihedral group needs k >= 1");
    const std::size_t n = 2 * k;
    // r^i s^e, index e * k + i; s r = r^{-1} s.
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t i = x % k, e = x / k, j = y % k, f = y / k;
            std::size_t rot = (e == 0) ? (i + j) % k : (i + k - j) % k;
            table[x][y] = ((e + f) % 2) * k + rot;
        }
    return make_group(std::move(table), 0);
}

/// Quaternion group {+-1, +-i, +-j, +-k}, indexed 1, i, j, k, -1, -i, -j, -k.
inline FiniteGroup quaternion_group()
{
    // unit products on {1, i, j, k}: (index, sign)
    const int prod[4][4][2] = {{{0, 1}, {1, 1}, {2, 1}, {3, 1}},
                               {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
                               {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
                               {{3, 1}, {2, 1}, {1, -1}, {0, -1}}};
    std::vector<std::vector<std::size_t>> table(8, std::vector<std::size_t>(8));
    for (std::size_t x = 0; x < 8; ++x)
        for (std::size_t y = 0; y < 8; ++y) {
            int sign = (x >= 4 ? -1 : 1) * (y >= 4 ? -1 : 1) * prod[x % 4][y % 4][1];
            table[x][y] = static_cast<std::size_t>(prod[x % 4][y % 4][0]) + (sign < 0 ? 4 : 0);
        }
    return make_group(std::move(table), 0, {"1", "i", "j", "k", "-1", "-i", "-j", "-k"});
}

/// All permutations of {0..k-1} in lexicographic order; element 0 is the identity.
inline FiniteGroup symmetric_group(std::size_t k)
{
    std::vector<std::vector<std::size_t>> elems;
    std::vector<std::size_t> p(k);
    std::iota(p.begin(), p.end(), 0u);
    do
        elems.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < elems.size(); ++i)
        index.emplace(elems[i], i);
    const std::size_t g = elems.size();
    std::vector<std::vector<std::size_t>> table(g, std::vector<std::size_t>(g));
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b) {
            std::vector<std::size_t> q(k);
            for (std::size_t x = 0; x < k; ++x)
                q[x] = elems[a][elems[b][x]];
            table[a][b] = index.at(q);
        }
    return make_group(std::move(table), 0);
}

struct PseudoCharTable {
    FiniteGroup group;
    unsigned n = 0;
    std::vector<Rational> values;
};

struct AxiomResult {
    bool holds = true;
    bool exhaustive = true;
    bool skipped = false;
    std::string detail;
    std::vector<std::size_t> witness;
};

struct PseudoCharReport {
    AxiomResult unit;        // t(1) = n
    AxiomResult central;     // t(ab) = t(ba)
    AxiomResult vanishing;   // T_{n+1} = 0

    bool passed() const { return unit.holds && central.holds && vanishing.holds && !vanishing.skipped; }
};

struct PseudoCharOptions {
    /// Largest number of (n+1)-element multisets checked exhaustively; beyond this, random sampling.
    std::size_t exhaustive_limit = 5'000'000;
    std::size_t samples = 20000;
    std::uint64_t seed = 20240611;
    /// Largest |G|^(n+1) * (n+1)! evaluated term by term when t is not central.
    std::size_t direct_limit = 2'000'000;
};

/// T_k on multisets of group elements via T_{k+1}(g, h) = T_k(g) t(h) - sum_i T_k(.., g_i h, ..).
/// Valid when t is a class function, where T_k is a symmetric function of its arguments.
class MultisetEvaluator {
public:
    MultisetEvaluator(const FiniteGroup& g, const std::vector<Rational>& values) : g_(g), t_(values) {}

    Rational operator()(std::vector<std::size_t> args)
    {
        std::sort(args.begin(), args.end());
        return eval(args);
    }

private:
    const Rational& eval(const std::vector<std::size_t>& args)
    {
        auto it = memo_.find(args);
        if (it != memo_.end())
            return it->second;
        Rational r;
        if (args.empty()) {
            r = 1;
        } else {
            // remove the last (largest) element h
            std::vector<std::size_t> rest(args.begin(), args.end() - 1);
            std::size_t h = args.back();
            r = eval(rest) * t_[h];
            for (std::size_t i = 0; i < rest.size(); ++i) {
                if (i > 0 && rest[i] == rest[i - 1])
                    continue;
                std::size_t count = 1;
                while (i + count < rest.size() && rest[i + count] == rest[i])
                    ++count;
                std::vector<std::size_t> merged = rest;
                merged[i] = g_.mul(rest[i], h);
                std::sort(merged.begin(), merged.end());
                r -= eval(merged) * Rational(static_cast<long>(count));
            }
        }
        return memo_.emplace(args, std::move(r)).first->second;
    }

    const FiniteGroup& g_;
    const std::vector<Rational>& t_;
    std::map<std::vector<std::size_t>, Rational> memo_;
};

/// Evaluates a pure trace polynomial in x1..xk at group elements: tr(w) is t(product along w),
/// using the least rotation of the variable word, and tr(1) is t(identity).
inline Rational evaluate_on_group(const TracePoly& p, const FiniteGroup& g, const std::vector<Rational>& values,
                                  const std::vector<std::size_t>& args)
{
    Rational s = 0;
    for (const auto& [k, c] : p.terms()) {
        if (!k.word.empty())
            throw std::invalid_argument("evaluate_on_group expects a pure trace polynomial");
        Rational term = c;
        for (const auto& tr : k.traces) {
            std::size_t e = g.identity;
            for (Letter l : tr.representative().letters) {
                if (l < 1 || l > args.size())
                    throw UnmappedVariable(l);
                e = g.mul(e, args[l - 1]);
            }
            term *= values[e];
        }
        s += term;
    }
    return s;
}

namespace detail {

inline std::string format_tuple(const FiniteGroup& g, const std::vector<std::size_t>& t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i)
        s += (i ? ", " : "") + g.name(t[i]);
    return s + ")";
}

inline long double multiset_count(std::size_t g, std::size_t k)
{
    long double c = 1;
    for (std::size_t i = 1; i <= k; ++i)
        c = c * static_cast<long double>(g + i - 1) / static_cast<long double>(i);
    return c;
}

/// Advances a nondecreasing sequence over {0..g-1}; false after the last one.
inline bool next_multiset(std::vector<std::size_t>& m, std::size_t g)
{
    std::size_t i = m.size();
    while (i > 0 && m[i - 1] == g - 1)
        --i;
    if (i == 0)
        return false;
    ++m[i - 1];
    for (std::size_t j = i; j < m.size(); ++j)
        m[j] = m[i - 1];
    return true;
}

inline bool next_tuple(std::vector<std::size_t>& m, std::size_t g)
{
    std::size_t i = m.size();
    while (i > 0 && m[i - 1] == g - 1) {
        m[i - 1] = 0;
        --i;
    }
    if (i == 0)
        return false;
    ++m[i - 1];
    return true;
}

} // namespace detail

/// Checks t(1) = n, t(ab) = t(ba) and T_{n+1} = 0, reporting the least failing witness of each.
inline PseudoCharReport check_pseudocharacter(const PseudoCharTable& p, const PseudoCharOptions& opts = {})
{
    const auto& G = p.group;
    if (p.values.size() != G.order)
        throw GroupError("one value per group element is required");
    if (p.n < 1)
        throw GroupError("degree must be positive");
    PseudoCharReport rep;

    if (p.values[G.identity] != p.n) {
        rep.unit.holds = false;
        rep.unit.witness = {G.identity};
        rep.unit.detail = "t(1) = " + p.values[G.identity].get_str() + " but n = " + std::to_string(p.n);
    }

    for (std::size_t a = 0; a < G.order && rep.central.holds; ++a)
        for (std::size_t b = a + 1; b < G.order; ++b)
            if (p.values[G.mul(a, b)] != p.values[G.mul(b, a)]) {
                rep.central.holds = false;
                rep.central.witness = {a, b};
                rep.central.detail = "t(" + G.name(a) + "*" + G.name(b) + ") = " + p.values[G.mul(a, b)].get_str() +
                                     " but t(" + G.name(b) + "*" + G.name(a) + ") = " +
                                     p.values[G.mul(b, a)].get_str();
                break;
            }

    const std::size_t k = p.n + 1;
    auto& v = rep.vanishing;
    auto fail = [&](const std::vector<std::size_t>& args, const Rational& val) {
        v.holds = false;
        v.witness = args;
        v.detail = "T_" + std::to_string(k) + detail::format_tuple(G, args) + " = " + val.get_str();
    };

    if (!rep.central.holds) {
        // T_k is not symmetric here; evaluate the explicit sum on every ordered tuple if affordable.
        long double cost = std::pow(static_cast<long double>(G.order), static_cast<long double>(k));
        for (std::size_t i = 2; i <= k; ++i)
            cost *= static_cast<long double>(i);
        if (cost > static_cast<long double>(opts.direct_limit)) {
            v.holds = true;
            v.skipped = true;
            v.exhaustive = false;
            v.detail = "skipped: t is not a class function and the direct check is too large";
            return rep;
        }
        auto tk = t_multilinear(static_cast<int>(k));
        std::vector<std::size_t> args(k, 0);
        do {
            Rational val = evaluate_on_group(tk, G, p.values, args);
            if (val != 0) {
                fail(args, val);
                break;
            }
        } while (detail::next_tuple(args, G.order));
        if (v.holds)
            v.detail = "direct evaluation on all ordered tuples";
        return rep;
    }

    MultisetEvaluator eval(G, p.values);
    if (detail::multiset_count(G.order, k) <= static_cast<long double>(opts.exhaustive_limit)) {
        std::vector<std::size_t> args(k, 0);
        do {
            Rational val = eval(args);
            if (val != 0) {
                fail(args, val);
                break;
            }
        } while (detail::next_multiset(args, G.order));
        if (v.holds)
            v.detail = "exhaustive over all multisets of size " + std::to_string(k);
    } else {
        v.exhaustive = false;
        std::mt19937_64 rng(opts.seed);
        for (std::size_t s = 0; s < opts.samples; ++s) {
            std::vector<std::size_t> args(k);
            for (auto& a : args)
                a = rng() % G.order;
            std::sort(args.begin(), args.end());
            Rational val = eval(args);
            if (val != 0) {
                fail(args, val);
                break;
            }
        }
        if (v.holds)
            v.detail = "sampled " + std::to_string(opts.samples) + " random tuples (not exhaustive)";
    }
    return rep;
}

/// The group algebra Q[G] with t extended linearly; basis elements are the group elements.
inline TraceAlgebra group_algebra(const FiniteGroup& g, const std::vector<Rational>& values)
{
    TraceAlgebra::SparseTable table(g.order,
                                    std::vector<std::vector<std::pair<std::size_t, Rational>>>(g.order));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < g.order; ++a) {
        labels.push_back(g.name(a));
        for (std::size_t b = 0; b < g.order; ++b)
            table[a][b].emplace_back(g.mul(a, b), Rational(1));
    }
    QVector unit(g.order);
    unit[g.identity] = 1;
    return make_algebra(std::move(labels), std::move(table), std::move(unit), values);
}

struct PseudoCharKernel {
    Subspace kernel;
    Quotient quotient;
    /// CH degree of the quotient; empty when the check was too large to run.
    std::optional<unsigned> ch_degree;
    std::string note;
};

/// Kernel of the trace form on Q[G] and the quotient, which is checked to be n-CH when affordable.
inline PseudoCharKernel pseudochar_kernel(const PseudoCharTable& p, const PseudoCharOptions& opts = {},
                                          std::size_t ch_check_limit = 5'000'000)
{
    auto rep = check_pseudocharacter(p, opts);
    if (!rep.passed()) {
        std::string why = !rep.unit.holds ? rep.unit.detail : !rep.central.holds ? rep.central.detail : rep.vanishing.detail;
        throw GroupError("not a pseudocharacter: " + why);
    }
    auto alg = group_algebra(p.group, p.values);
    auto k = trace_kernel(alg);
    PseudoCharKernel out{k, quotient(alg, k), std::nullopt, ""};
    long double cost = std::pow(static_cast<long double>(out.quotient.algebra.dim()), static_cast<long double>(p.n));
    for (unsigned i = 2; i <= p.n + 1; ++i)
        cost *= i;
    if (cost > static_cast<long double>(ch_check_limit)) {
        out.note = "CH check of the quotient skipped (too many basis tuples)";
        return out;
    }
    auto cd = ch_degree(out.quotient.algebra, p.n);
    if (!cd.degree || *cd.degree != p.n)
        throw std::logic_error("quotient by the trace kernel is not " + std::to_string(p.n) + "-CH: " + cd.diagnostic);
    out.ch_degree = cd.degree;
    out.note = cd.diagnostic;
    return out;
}

} // namespace tracealg
