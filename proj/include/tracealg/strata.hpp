#pragma once

// Stratum types (m; a) of the quotient of l-tuples of n x n matrices, their dimensions,
// the closure order and its covering relations.

#include "tracealg/findim.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tracealg {

/// Multiset of (block size m, weight a) pairs, stored in descending order.
class StratumType {
public:
    using Pair = std::pair<unsigned, unsigned>;

    StratumType() = default;
    explicit StratumType(std::vector<Pair> pairs) : pairs_(std::move(pairs))
    {
        if (pairs_.empty())
            throw std::invalid_argument("a stratum type needs at least one block");
        for (const auto& [m, a] : pairs_)
            if (m == 0 || a == 0)
                throw std::invalid_argument("block sizes and weights must be positive");
        std::sort(pairs_.begin(), pairs_.end(), std::greater<>());
    }

    static StratumType from_weighted(const WeightedType& w)
    {
        std::vector<Pair> p;
        for (std::size_t i = 0; i < w.sizes.size(); ++i)
            p.emplace_back(w.sizes[i], w.weights[i]);
        return StratumType(std::move(p));
    }

    WeightedType to_weighted() const
    {
        std::vector<unsigned> m, a;
        for (const auto& [mi, ai] : pairs_) {
            m.push_back(mi);
            a.push_back(ai);
        }
        return WeightedType(m, a);
    }

    const std::vector<Pair>& pairs() const noexcept { return pairs_; }
    std::size_t blocks() const noexcept { return pairs_.size(); }

    unsigned n() const
    {
        unsigned s = 0;
        for (const auto& [m, a] : pairs_)
            s += m * a;
        return s;
    }

    /// "m/a" pairs separated by spaces, e.g. "2/1 1/1".
    std::string label() const
    {
        std::string s;
        for (std::size_t i = 0; i < pairs_.size(); ++i)
            s += (i ? " " : "") + std::to_string(pairs_[i].first) + "/" + std::to_string(pairs_[i].second);
        return s;
    }

    friend bool operator==(const StratumType& x, const StratumType& y) { return x.pairs_ == y.pairs_; }
    friend bool operator!=(const StratumType& x, const StratumType& y) { return !(x == y); }

    /// Listing order: fewer blocks first, then descending lexicographic.
    friend bool operator<(const StratumType& x, const StratumType& y)
    {
        if (x.pairs_.size() != y.pairs_.size())
            return x.pairs_.size() < y.pairs_.size();
        return x.pairs_ > y.pairs_;
    }

private:
    std::vector<Pair> pairs_;
};

/// All types with sum m*a = n, in listing order.
inline std::vector<StratumType> enumerate_types(unsigned n)
{
    if (n < 1)
        throw std::invalid_argument("enumerate_types needs n >= 1");
    std::vector<StratumType::Pair> candidates;
    for (unsigned m = 1; m <= n; ++m)
        for (unsigned a = 1; m * a <= n; ++a)
            candidates.emplace_back(m, a);
    std::sort(candidates.begin(), candidates.end(), std::greater<>());

    std::vector<StratumType> out;
    std::vector<StratumType::Pair> cur;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t start, unsigned remaining) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (std::size_t i = start; i < candidates.size(); ++i) {
            unsigned w = candidates[i].first * candidates[i].second;
            if (w > remaining)
                continue;
            cur.push_back(candidates[i]);
            rec(i, remaining - w);
            cur.pop_back();
        }
    };
    rec(0, n);
    std::sort(out.begin(), out.end());
    return out;
}

struct StratumDims {
    long sheet = 0;
    long stratum = 0;
    long stabilizer = 0;
    long projective_stabilizer = 0;
};

inline StratumDims stratum_dims(const StratumType& s, unsigned ell)
{
    if (ell <= 1)
        throw std::invalid_argument("stratum dimensions need l >= 2");
    long n = s.n(), sum_m2 = 0, sum_a2 = 0, k = static_cast<long>(s.blocks());
    for (const auto& [m, a] : s.pairs()) {
        sum_m2 += static_cast<long>(m) * m;
        sum_a2 += static_cast<long>(a) * a;
    }
    StratumDims d;
    d.stratum = static_cast<long>(ell - 1) * sum_m2 + k;
    d.sheet = n * n + static_cast<long>(ell - 1) * sum_m2 - sum_a2 + k;
    d.stabilizer = sum_a2;
    d.projective_stabilizer = sum_a2 - 1;
    return d;
}

/// True iff F(s') embeds unitally and trace-compatibly in F(s): a nonnegative integer matrix r with
/// sum_j r_ij m'_j = m_i for every block i of s and sum_i a_i r_ij = a'_j for every block j of s'.
inline bool closure_leq(const StratumType& lower, const StratumType& upper)
{
    if (lower.n() != upper.n())
        throw std::invalid_argument("closure_leq compares types with different n");
    const auto& rows = upper.pairs();
    const auto& cols = lower.pairs();
    std::vector<unsigned> col_weight(cols.size(), 0);

    // Fill row i, column j onward, with remaining size to cover in this row.
    std::function<bool(std::size_t, std::size_t, unsigned)> fill = [&](std::size_t i, std::size_t j,
                                                                       unsigned remaining) -> bool {
        if (i == rows.size()) {
            for (std::size_t c = 0; c < cols.size(); ++c)
                if (col_weight[c] != cols[c].second)
                    return false;
            return true;
        }
        if (j == cols.size())
            return remaining == 0 && fill(i + 1, 0, i + 1 < rows.size() ? rows[i + 1].first : 0);
        const unsigned mj = cols[j].first, ai = rows[i].second;
        for (unsigned r = 0; r * mj <= remaining; ++r) {
            if (col_weight[j] + r * ai > cols[j].second)
                break;
            col_weight[j] += r * ai;
            bool ok = fill(i, j + 1, remaining - r * mj);
            col_weight[j] -= r * ai;
            if (ok)
                return true;
        }
        return false;
    };
    return fill(0, 0, rows.front().first);
}

struct Degeneration {
    StratumType type;
    long codim = 0;
    /// "split" or "merge".
    std::string move;
};

/// Types reached by one split (m, a) -> (p, a), (q, a) or one merge (m, a1), (m, a2) -> (m, a1 + a2).
inline std::vector<Degeneration> maximal_degenerations(const StratumType& s, unsigned ell)
{
    if (ell <= 1)
        throw std::invalid_argument("degenerations need l >= 2");
    std::map<StratumType, Degeneration> found;
    const auto& ps = s.pairs();
    const long l1 = static_cast<long>(ell) - 1;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        auto [m, a] = ps[i];
        for (unsigned q = 1; 2 * q <= m; ++q) {
            unsigned p = m - q;
            auto next = ps;
            next.erase(next.begin() + static_cast<long>(i));
            next.emplace_back(p, a);
            next.emplace_back(q, a);
            StratumType t(next);
            found.emplace(t, Degeneration{t, l1 * 2 * p * q - 1, "split"});
        }
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            if (ps[j].first != m)
                continue;
            auto next = ps;
            next.erase(next.begin() + static_cast<long>(j));
            next[i].second = a + ps[j].second;
            StratumType t(next);
            found.emplace(t, Degeneration{t, l1 * static_cast<long>(m) * m + 1, "merge"});
        }
    }
    std::vector<Degeneration> out;
    for (auto& [t, d] : found)
        out.push_back(std::move(d));
    return out;
}

struct PosetEdge {
    std::size_t upper = 0;
    std::size_t lower = 0;
    long codim = 0;
    /// Codimension-1 coverings are flagged.
    bool flagged = false;
    /// A flagged edge conforms when l = 2 and it splits a 2 x 2 block into 1 + 1.
    bool conforms = true;
};

struct StrataPoset {
    unsigned n = 0;
    unsigned ell = 0;
    std::vector<StratumType> nodes;
    std::vector<StratumDims> dims;
    /// leq[i][j] is closure_leq(nodes[i], nodes[j]).
    std::vector<std::vector<bool>> leq;
    std::vector<PosetEdge> edges;

    std::size_t flagged_count() const
    {
        return static_cast<std::size_t>(
            std::count_if(edges.begin(), edges.end(), [](const PosetEdge& e) { return e.flagged; }));
    }

    /// Every codimension-1 covering is an l = 2 split of a 2 x 2 block.
    bool codimension_rule_holds() const
    {
        return std::all_of(edges.begin(), edges.end(), [](const PosetEdge& e) { return !e.flagged || e.conforms; });
    }
};

namespace detail {

inline bool is_two_block_split(const StratumType& upper, const StratumType& lower)
{
    for (const auto& d : maximal_degenerations(upper, 2))
        if (d.move == "split" && d.type == lower) {
            auto u = upper.pairs(), l = lower.pairs();
            // the block that disappeared from upper must be (2, a)
            for (const auto& p : l) {
                auto it = std::find(u.begin(), u.end(), p);
                if (it != u.end())
                    u.erase(it);
            }
            if (u.size() == 1 && u.front().first == 2)
                return true;
        }
    return false;
}

} // namespace detail

inline StrataPoset stratification_poset(unsigned n, unsigned ell)
{
    if (ell <= 1)
        throw std::invalid_argument("stratification needs l >= 2");
    StrataPoset p;
    p.n = n;
    p.ell = ell;
    p.nodes = enumerate_types(n);
    const std::size_t N = p.nodes.size();
    for (const auto& t : p.nodes)
        p.dims.push_back(stratum_dims(t, ell));
    p.leq.assign(N, std::vector<bool>(N, false));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            p.leq[i][j] = closure_leq(p.nodes[i], p.nodes[j]);
    for (std::size_t hi = 0; hi < N; ++hi)
        for (std::size_t lo = 0; lo < N; ++lo) {
            if (hi == lo || !p.leq[lo][hi])
                continue;
            bool covering = true;
            for (std::size_t mid = 0; mid < N && covering; ++mid)
                if (mid != hi && mid != lo && p.leq[lo][mid] && p.leq[mid][hi])
                    covering = false;
            if (!covering)
                continue;
            PosetEdge e{hi, lo, p.dims[hi].stratum - p.dims[lo].stratum, false, true};
            if (e.codim == 1) {
                e.flagged = true;
                e.conforms = ell == 2 && detail::is_two_block_split(p.nodes[hi], p.nodes[lo]);
            }
            p.edges.push_back(e);
        }
    return p;
}

inline std::string to_dot(const StrataPoset& p)
{
    std::ostringstream os;
    os << "digraph strata {\n";
    os << "  label=\"n=" << p.n << " l=" << p.ell << "\";\n";
    for (std::size_t i = 0; i < p.nodes.size(); ++i)
        os << "  s" << i << " [label=\"" << p.nodes[i].label() << "\\ndim " << p.dims[i].stratum << "\"];\n";
    for (const auto& e : p.edges) {
        os << "  s" << e.upper << " -> s" << e.lower << " [label=\"" << e.codim << "\"";
        if (e.flagged)
            os << ", color=red, penwidth=2";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace tracealg
