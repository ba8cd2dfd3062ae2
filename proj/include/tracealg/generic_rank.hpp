#pragma once

// Rank of the algebra generated by l generic elements of a finite-dimensional trace algebra,
// over the field of functions of their traces.
//
// Method: pick a random rational point p for the coordinates of the generic elements and
// parametrize the fiber {z : every trace of a word in z equals its value at p} near p by
// truncated power series. Functions of the traces are constant on that fiber, so the rank of the
// span of words over the trace field equals the rank over Q of the words' Taylor expansions
// along the fiber. The series order is raised until the rank stops growing.

#include "tracealg/findim.hpp"
#include "tracealg/freetrace.hpp"
#include "tracealg/genmat.hpp"
#include "tracealg/linalg.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracealg {

namespace detail {

/// Dense multivariate power series truncated at a total degree.
class SeriesRing {
public:
    SeriesRing(std::size_t vars, unsigned order) : vars_(vars), order_(order)
    {
        std::vector<unsigned> e(vars, 0);
        for (unsigned d = 0; d <= order; ++d)
            enumerate(e, 0, d);
        for (std::size_t i = 0; i < exps_.size(); ++i)
            index_.emplace(exps_[i], i);
        for (std::size_t i = 0; i < exps_.size(); ++i)
            for (std::size_t j = 0; j < exps_.size(); ++j) {
                if (degree_[i] + degree_[j] > order)
                    continue;
                std::vector<unsigned> s(vars);
                for (std::size_t k = 0; k < vars; ++k)
                    s[k] = exps_[i][k] + exps_[j][k];
                products_.push_back({i, j, index_.at(s)});
            }
        for (std::size_t k = 0; k < vars; ++k) {
            std::vector<unsigned> u(vars, 0);
            u[k] = 1;
            linear_.push_back(order >= 1 ? index_.at(u) : 0);
        }
    }

    std::size_t size() const noexcept { return exps_.size(); }
    std::size_t vars() const noexcept { return vars_; }
    unsigned order() const noexcept { return order_; }

    using Series = std::vector<Rational>;

    Series zero() const { return Series(size()); }

    Series constant(const Rational& c) const
    {
        Series s(size());
        s[0] = c;
        return s;
    }

    /// c + s_k
    Series shifted_variable(std::size_t k, const Rational& c) const
    {
        Series s = constant(c);
        if (order_ >= 1)
            s[linear_[k]] = 1;
        return s;
    }

    std::size_t linear_index(std::size_t k) const { return linear_[k]; }

    Series mul(const Series& a, const Series& b) const
    {
        Series r(size());
        for (const auto& p : products_) {
            if (a[p.a] == 0 || b[p.b] == 0)
                continue;
            r[p.out] += a[p.a] * b[p.b];
        }
        return r;
    }

    static bool is_zero(const Series& s)
    {
        for (const auto& x : s)
            if (x != 0)
                return false;
        return true;
    }

private:
    struct Product {
        std::size_t a, b, out;
    };

    void enumerate(std::vector<unsigned>& e, std::size_t pos, unsigned remaining)
    {
        if (pos + 1 >= vars_ || vars_ == 0) {
            if (vars_ == 0) {
                if (remaining == 0) {
                    exps_.push_back(e);
                    degree_.push_back(0);
                }
                return;
            }
            e[pos] = remaining;
            exps_.push_back(e);
            unsigned d = 0;
            for (auto x : e)
                d += x;
            degree_.push_back(d);
            e[pos] = 0;
            return;
        }
        for (unsigned k = remaining + 1; k-- > 0;) {
            e[pos] = k;
            enumerate(e, pos + 1, remaining - k);
        }
        e[pos] = 0;
    }

    std::size_t vars_;
    unsigned order_;
    std::vector<std::vector<unsigned>> exps_;
    std::vector<unsigned> degree_;
    std::map<std::vector<unsigned>, std::size_t> index_;
    std::vector<Product> products_;
    std::vector<std::size_t> linear_;
};

using Series = SeriesRing::Series;
/// Element of A with series coordinates.
using SeriesElement = std::vector<Series>;

inline SeriesElement series_multiply(const TraceAlgebra& a, const SeriesRing& ring, const SeriesElement& x,
                                     const SeriesElement& y)
{
    const std::size_t d = a.dim();
    SeriesElement r(d, ring.zero());
    for (std::size_t i = 0; i < d; ++i) {
        if (SeriesRing::is_zero(x[i]))
            continue;
        for (std::size_t j = 0; j < d; ++j) {
            const auto& entry = a.table()[i][j];
            if (entry.empty() || SeriesRing::is_zero(y[j]))
                continue;
            Series prod = ring.mul(x[i], y[j]);
            for (const auto& [k, c] : entry)
                for (std::size_t m = 0; m < prod.size(); ++m)
                    if (prod[m] != 0)
                        r[k][m] += c * prod[m];
        }
    }
    return r;
}

inline Series series_trace(const TraceAlgebra& a, const SeriesRing& ring, const SeriesElement& x)
{
    Series s = ring.zero();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const Rational& t = a.trace_vector()[i];
        if (t == 0)
            continue;
        for (std::size_t m = 0; m < s.size(); ++m)
            s[m] += t * x[i][m];
    }
    return s;
}

inline SeriesElement series_unit(const TraceAlgebra& a, const SeriesRing& ring)
{
    SeriesElement u(a.dim(), ring.zero());
    for (std::size_t i = 0; i < a.dim(); ++i)
        u[i][0] = a.unit()[i];
    return u;
}

inline SeriesElement series_word(const TraceAlgebra& a, const SeriesRing& ring,
                                 const std::vector<SeriesElement>& gens, const Word& w)
{
    SeriesElement r = series_unit(a, ring);
    for (Letter l : w.letters)
        r = series_multiply(a, ring, r, gens[l - 1]);
    return r;
}

inline QVector flatten(const SeriesElement& x)
{
    QVector v;
    for (const auto& s : x)
        v.insert(v.end(), s.begin(), s.end());
    return v;
}

} // namespace detail

struct GenericRankOptions {
    std::uint64_t seed = default_seed;
    /// Highest series order tried before giving up.
    unsigned max_series_order = 6;
};

struct GenericRank {
    std::size_t rank = 0;
    /// True when the span of words closed up below the word-length cap and the series order settled.
    bool stabilized = false;
    std::string status;
    unsigned series_order = 0;
    /// Number of algebraically independent traces found (transcendence degree of the trace ring).
    std::size_t trace_count = 0;
    std::vector<Word> basis_words;
};

/// Rank of the span of products of l generic elements over the fraction field of their traces.
/// degree_cap bounds the word length; 0 means 2 * dim(A)^2.
inline GenericRank generic_algebra_rank(const TraceAlgebra& a, unsigned ell, unsigned degree_cap = 0,
                                        const GenericRankOptions& opts = {})
{
    using namespace detail;
    const std::size_t d = a.dim();
    if (ell < 1)
        throw std::invalid_argument("generic_algebra_rank needs at least one generic element");
    if (d == 0)
        throw std::invalid_argument("generic_algebra_rank needs a nonzero algebra");
    if (degree_cap == 0)
        degree_cap = static_cast<unsigned>(2 * d * d);
    if (degree_cap < d)
        throw std::invalid_argument("degree_cap must be at least dim A");

    const std::size_t nvars = ell * d;
    std::mt19937_64 rng(opts.seed);
    std::vector<Rational> point(nvars);
    for (auto& x : point)
        x = static_cast<long>(rng() % 9) - 4;

    // Algebraically independent traces: greedy on gradients at the point, words by length.
    SeriesRing jet(nvars, 1);
    std::vector<SeriesElement> jet_gens(ell, SeriesElement(d));
    for (unsigned i = 0; i < ell; ++i)
        for (std::size_t j = 0; j < d; ++j)
            jet_gens[i][j] = jet.shifted_variable(i * d + j, point[i * d + j]);

    IncrementalSpan gradients(nvars);
    std::vector<QVector> gradient_rows;
    std::vector<Word> trace_words;
    std::vector<std::pair<Word, SeriesElement>> layer{{Word{}, series_unit(a, jet)}};
    unsigned idle = 0;
    for (unsigned len = 1; len <= degree_cap && idle < 2 && gradients.rank() < nvars; ++len) {
        std::vector<std::pair<Word, SeriesElement>> next;
        bool grew = false;
        for (const auto& [w, val] : layer)
            for (unsigned i = 1; i <= ell; ++i) {
                Word nw = w * Word{i};
                auto nval = series_multiply(a, jet, val, jet_gens[i - 1]);
                if (CyclicWord(nw).representative() == nw) {
                    auto tr = series_trace(a, jet, nval);
                    QVector g(nvars);
                    for (std::size_t k = 0; k < nvars; ++k)
                        g[k] = tr[jet.linear_index(k)];
                    if (gradients.insert(g)) {
                        gradient_rows.push_back(g);
                        trace_words.push_back(nw);
                        grew = true;
                    }
                }
                next.emplace_back(std::move(nw), std::move(nval));
            }
        idle = grew ? 0 : idle + 1;
        layer = std::move(next);
        if (layer.size() > 20000)
            break;
    }
    const std::size_t rho = trace_words.size();

    // Pivot coordinates are solved for; the remaining ones parametrize the fiber.
    std::vector<std::size_t> pivots, free_vars;
    if (rho > 0)
        pivots = rref(rows_to_matrix(gradient_rows, nvars)).pivots;
    std::vector<long> pivot_slot(nvars, -1);
    for (std::size_t q = 0; q < pivots.size(); ++q)
        pivot_slot[pivots[q]] = static_cast<long>(q);
    for (std::size_t v = 0; v < nvars; ++v)
        if (pivot_slot[v] < 0)
            free_vars.push_back(v);
    QMatrix jz(rho, rho);
    for (std::size_t r = 0; r < rho; ++r)
        for (std::size_t q = 0; q < rho; ++q)
            jz(r, q) = gradient_rows[r][pivots[q]];
    QMatrix jz_inv;
    if (rho > 0) {
        auto inv = inverse(jz);
        if (!inv)
            throw std::logic_error("pivot Jacobian is singular");
        jz_inv = *inv;
    }
    std::vector<Rational> target(rho);
    {
        SeriesRing zero_ring(0, 0);
        std::vector<SeriesElement> gens(ell, SeriesElement(d));
        for (unsigned i = 0; i < ell; ++i)
            for (std::size_t j = 0; j < d; ++j)
                gens[i][j] = zero_ring.constant(point[i * d + j]);
        for (std::size_t r = 0; r < rho; ++r)
            target[r] = series_trace(a, zero_ring, series_word(a, zero_ring, gens, trace_words[r]))[0];
    }

    auto rank_at_order = [&](unsigned order, GenericRank& out) {
        SeriesRing ring(free_vars.size(), order);
        std::vector<Series> delta(rho, ring.zero());
        auto build_gens = [&]() {
            std::vector<SeriesElement> gens(ell, SeriesElement(d));
            std::size_t fi = 0;
            for (std::size_t v = 0; v < nvars; ++v) {
                Series s;
                if (pivot_slot[v] >= 0) {
                    s = delta[static_cast<std::size_t>(pivot_slot[v])];
                    s[0] += point[v];
                } else {
                    s = ring.shifted_variable(fi++, point[v]);
                }
                gens[v / d][v % d] = std::move(s);
            }
            return gens;
        };
        auto residual = [&](const std::vector<SeriesElement>& gens) {
            std::vector<Series> f(rho);
            for (std::size_t r = 0; r < rho; ++r) {
                f[r] = series_trace(a, ring, series_word(a, ring, gens, trace_words[r]));
                f[r][0] -= target[r];
            }
            return f;
        };
        for (unsigned it = 0; it <= order; ++it) {
            auto f = residual(build_gens());
            for (std::size_t q = 0; q < rho; ++q)
                for (std::size_t r = 0; r < rho; ++r) {
                    if (jz_inv(q, r) == 0)
                        continue;
                    for (std::size_t m = 0; m < ring.size(); ++m)
                        delta[q][m] -= jz_inv(q, r) * f[r][m];
                }
        }
        auto gens = build_gens();
        for (const auto& f : residual(gens))
            if (!SeriesRing::is_zero(f))
                throw std::logic_error("fiber series did not converge");

        IncrementalSpan span(d * ring.size());
        std::deque<std::pair<Word, SeriesElement>> queue;
        out.basis_words.clear();
        out.stabilized = true;
        auto unit = series_unit(a, ring);
        if (span.insert(flatten(unit))) {
            out.basis_words.push_back(Word{});
            queue.emplace_back(Word{}, unit);
        }
        while (!queue.empty()) {
            auto [w, val] = std::move(queue.front());
            queue.pop_front();
            for (unsigned i = 1; i <= ell; ++i) {
                Word nw = w * Word{i};
                auto nval = series_multiply(a, ring, val, gens[i - 1]);
                auto flat = flatten(nval);
                if (span.contains(flat))
                    continue;
                if (nw.length() > degree_cap) {
                    out.stabilized = false;
                    continue;
                }
                span.insert(std::move(flat));
                out.basis_words.push_back(nw);
                queue.emplace_back(std::move(nw), std::move(nval));
            }
        }
        return span.rank();
    };

    GenericRank result;
    result.trace_count = rho;
    GenericRank current, next;
    std::size_t r_cur = rank_at_order(1, current);
    for (unsigned order = 1; order < opts.max_series_order; ++order) {
        std::size_t r_next = rank_at_order(order + 1, next);
        if (r_next == r_cur && current.stabilized && next.stabilized) {
            result.rank = r_cur;
            result.stabilized = true;
            result.series_order = order;
            result.basis_words = current.basis_words;
            result.status = "stabilized";
            return result;
        }
        r_cur = r_next;
        current = next;
    }
    result.rank = r_cur;
    result.stabilized = false;
    result.series_order = opts.max_series_order;
    result.basis_words = current.basis_words;
    result.status = "inconclusive";
    return result;
}

} // namespace tracealg
