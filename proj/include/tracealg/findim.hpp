#pragma once

// Finite-dimensional algebras with a scalar trace, given by structure constants.

#include "tracealg/chident.hpp"
#include "tracealg/freetrace.hpp"
#include "tracealg/linalg.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace tracealg {

class AlgebraError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A subspace of Q^d stored as the nonzero rows of its reduced row-echelon basis.
class Subspace {
public:
    explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

    static Subspace span(const std::vector<QVector>& vectors, std::size_t ambient)
    {
        Subspace s(ambient);
        if (vectors.empty())
            return s;
        auto e = rref(rows_to_matrix(vectors, ambient));
        s.pivots_ = e.pivots;
        for (std::size_t i = 0; i < e.rows.rows(); ++i) {
            QVector r(ambient);
            for (std::size_t j = 0; j < ambient; ++j)
                r[j] = e.rows(i, j);
            s.basis_.push_back(std::move(r));
        }
        return s;
    }

    static Subspace whole(std::size_t ambient)
    {
        std::vector<QVector> vs;
        for (std::size_t i = 0; i < ambient; ++i) {
            QVector v(ambient);
            v[i] = 1;
            vs.push_back(std::move(v));
        }
        return span(vs, ambient);
    }

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    bool is_zero() const noexcept { return basis_.empty(); }
    const std::vector<QVector>& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    /// v minus its projection along the echelon basis; zero iff v lies in the subspace.
    QVector reduce(QVector v) const
    {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            Rational f = v[pivots_[i]];
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < ambient_; ++j)
                v[j] -= f * basis_[i][j];
        }
        return v;
    }

    bool contains(const QVector& v) const
    {
        auto r = reduce(v);
        return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
    }

    bool contains(const Subspace& o) const
    {
        return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const QVector& v) { return contains(v); });
    }

    friend Subspace operator+(const Subspace& a, const Subspace& b)
    {
        auto vs = a.basis_;
        vs.insert(vs.end(), b.basis_.begin(), b.basis_.end());
        return span(vs, a.ambient_);
    }

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_;
    std::vector<QVector> basis_;
    std::vector<std::size_t> pivots_;
};

/// Associative unital algebra over Q with a Q-valued trace t(u_i) = trace[i].
class TraceAlgebra {
public:
    /// products[i][j] lists (k, c) with u_i u_j = sum c u_k.
    using SparseTable = std::vector<std::vector<std::vector<std::pair<std::size_t, Rational>>>>;

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const QVector& unit() const noexcept { return unit_; }
    const QVector& trace_vector() const noexcept { return trace_; }
    const SparseTable& table() const noexcept { return table_; }

    QVector basis_vector(std::size_t i) const
    {
        QVector v(dim_);
        v[i] = 1;
        return v;
    }

    QVector zero() const { return QVector(dim_); }

    QVector multiply(const QVector& a, const QVector& b) const
    {
        QVector r(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (b[j] == 0)
                    continue;
                Rational ab = a[i] * b[j];
                for (const auto& [k, c] : table_[i][j])
                    r[k] += ab * c;
            }
        }
        return r;
    }

    Rational trace(const QVector& a) const
    {
        Rational s = 0;
        for (std::size_t i = 0; i < dim_; ++i)
            if (a[i] != 0)
                s += a[i] * trace_[i];
        return s;
    }

    /// Gram matrix of the trace form t(u_i u_j).
    QMatrix gram() const
    {
        QMatrix g(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) {
                Rational s = 0;
                for (const auto& [k, c] : table_[i][j])
                    s += c * trace_[k];
                g(i, j) = s;
            }
        return g;
    }

    friend TraceAlgebra make_algebra(std::vector<std::string> labels, SparseTable table, QVector unit,
                                     QVector trace);

    friend bool operator==(const TraceAlgebra& a, const TraceAlgebra& b)
    {
        return a.dim_ == b.dim_ && a.table_ == b.table_ && a.unit_ == b.unit_ && a.trace_ == b.trace_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<std::string> labels_;
    SparseTable table_;
    QVector unit_;
    QVector trace_;
};

inline std::string format_vector(const QVector& v)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i].get_str();
    os << ']';
    return os.str();
}

/// Validated constructor: associativity, unit law and t(u_i u_j) = t(u_j u_i) are checked exhaustively.
inline TraceAlgebra make_algebra(std::vector<std::string> labels, TraceAlgebra::SparseTable table, QVector unit,
                                 QVector trace)
{
    const std::size_t d = table.size();
    if (labels.empty())
        for (std::size_t i = 0; i < d; ++i)
            labels.push_back("u" + std::to_string(i + 1));
    if (labels.size() != d || unit.size() != d || trace.size() != d)
        throw AlgebraError("algebra data has inconsistent dimensions");
    for (auto& row : table) {
        if (row.size() != d)
            throw AlgebraError("multiplication table is not square");
        for (auto& entry : row) {
            std::map<std::size_t, Rational> merged;
            for (const auto& [k, c] : entry) {
                if (k >= d)
                    throw AlgebraError("structure constant index " + std::to_string(k) + " out of range");
                merged[k] += c;
            }
            entry.clear();
            for (const auto& [k, c] : merged)
                if (c != 0)
                    entry.emplace_back(k, c);
        }
    }

    TraceAlgebra a;
    a.dim_ = d;
    a.labels_ = std::move(labels);
    a.table_ = std::move(table);
    a.unit_ = std::move(unit);
    a.trace_ = std::move(trace);

    std::vector<std::vector<QVector>> prod(d, std::vector<QVector>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            prod[i][j] = a.multiply(a.basis_vector(i), a.basis_vector(j));

    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                auto lhs = a.multiply(prod[i][j], a.basis_vector(k));
                auto rhs = a.multiply(a.basis_vector(i), prod[j][k]);
                if (lhs != rhs)
                    throw AlgebraError("not associative: (" + a.labels_[i] + "*" + a.labels_[j] + ")*" +
                                       a.labels_[k] + " != " + a.labels_[i] + "*(" + a.labels_[j] + "*" +
                                       a.labels_[k] + ")");
            }
    for (std::size_t i = 0; i < d; ++i) {
        auto e = a.basis_vector(i);
        if (a.multiply(a.unit_, e) != e || a.multiply(e, a.unit_) != e)
            throw AlgebraError("unit law fails on " + a.labels_[i]);
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (a.trace(prod[i][j]) != a.trace(prod[j][i]))
                throw AlgebraError("trace not symmetric: t(" + a.labels_[i] + "*" + a.labels_[j] + ") != t(" +
                                   a.labels_[j] + "*" + a.labels_[i] + ")");
    return a;
}

/// Block sizes and trace weights of the algebra F(m; a) = sum M_{m_i} with t = sum a_i tr.
struct WeightedType {
    std::vector<unsigned> sizes;
    std::vector<unsigned> weights;

    WeightedType() = default;
    WeightedType(std::vector<unsigned> m, std::vector<unsigned> a) : sizes(std::move(m)), weights(std::move(a))
    {
        if (sizes.empty() || sizes.size() != weights.size())
            throw std::invalid_argument("block sizes and weights must be nonempty lists of equal length");
        for (std::size_t i = 0; i < sizes.size(); ++i)
            if (sizes[i] == 0 || weights[i] == 0)
                throw std::invalid_argument("block sizes and weights must be positive");
        std::vector<std::pair<unsigned, unsigned>> pairs;
        for (std::size_t i = 0; i < sizes.size(); ++i)
            pairs.emplace_back(sizes[i], weights[i]);
        std::sort(pairs.begin(), pairs.end());
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            sizes[i] = pairs[i].first;
            weights[i] = pairs[i].second;
        }
    }

    unsigned n() const
    {
        unsigned s = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i)
            s += sizes[i] * weights[i];
        return s;
    }

    friend bool operator==(const WeightedType& a, const WeightedType& b)
    {
        return a.sizes == b.sizes && a.weights == b.weights;
    }
};

/// One split simple summand M_m: coordinate vectors of its matrix units e_hk in row-major order.
struct MatrixBlock {
    unsigned size = 0;
    std::vector<QVector> units;
};

struct SemisimpleAlgebra {
    TraceAlgebra algebra;
    std::vector<MatrixBlock> blocks;
};

/// Block-diagonal sum of matrix algebras with trace sum a_i * tr on block i.
inline SemisimpleAlgebra weighted_semisimple(const WeightedType& w)
{
    std::size_t d = 0;
    for (unsigned m : w.sizes)
        d += m * m;
    std::vector<std::string> labels;
    TraceAlgebra::SparseTable table(d, std::vector<std::vector<std::pair<std::size_t, Rational>>>(d));
    QVector unit(d), trace(d);
    std::vector<MatrixBlock> blocks;
    std::size_t offset = 0;
    for (std::size_t b = 0; b < w.sizes.size(); ++b) {
        const unsigned m = w.sizes[b];
        MatrixBlock block{m, {}};
        for (unsigned h = 0; h < m; ++h)
            for (unsigned k = 0; k < m; ++k) {
                std::size_t idx = offset + h * m + k;
                labels.push_back("b" + std::to_string(b + 1) + "e" + std::to_string(h + 1) + std::to_string(k + 1));
                QVector v(d);
                v[idx] = 1;
                block.units.push_back(std::move(v));
                if (h == k) {
                    unit[idx] = 1;
                    trace[idx] = w.weights[b];
                }
                for (unsigned l = 0; l < m; ++l)
                    table[idx][offset + k * m + l].emplace_back(offset + h * m + l, Rational(1));
            }
        blocks.push_back(std::move(block));
        offset += m * m;
    }
    return {make_algebra(std::move(labels), std::move(table), std::move(unit), std::move(trace)), std::move(blocks)};
}

/// Same algebra with trace multiplied by a.
inline TraceAlgebra rescale_trace(const TraceAlgebra& a, unsigned factor)
{
    if (factor < 1)
        throw std::invalid_argument("rescale_trace needs a positive factor");
    QVector t = a.trace_vector();
    for (auto& x : t)
        x *= factor;
    return make_algebra(a.labels(), a.table(), a.unit(), std::move(t));
}

inline bool is_two_sided_ideal(const TraceAlgebra& a, const Subspace& i)
{
    for (const auto& v : i.basis())
        for (std::size_t k = 0; k < a.dim(); ++k) {
            auto e = a.basis_vector(k);
            if (!i.contains(a.multiply(e, v)) || !i.contains(a.multiply(v, e)))
                return false;
        }
    return true;
}

/// Radical of the bilinear form t(xy).
inline Subspace trace_kernel(const TraceAlgebra& a)
{
    auto k = Subspace::span(nullspace(a.gram()), a.dim());
    if (!is_two_sided_ideal(a, k))
        throw std::logic_error("trace kernel is not an ideal; the algebra invariants are broken");
    for (const auto& v : k.basis())
        if (a.trace(v) != 0)
            throw std::logic_error("trace kernel contains an element of nonzero trace");
    return k;
}

/// A/I together with the coordinates of A that survive as its basis.
struct Quotient {
    TraceAlgebra algebra;
    std::vector<std::size_t> kept;
    Subspace ideal;

    QVector project(const QVector& v) const
    {
        auto r = ideal.reduce(v);
        QVector out(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i)
            out[i] = r[kept[i]];
        return out;
    }

    QVector lift(const QVector& v) const
    {
        QVector out(ideal.ambient());
        for (std::size_t i = 0; i < kept.size(); ++i)
            out[kept[i]] = v[i];
        return out;
    }
};

/// Quotient by a trace ideal (two-sided, with t(I) contained in I).
inline Quotient quotient(const TraceAlgebra& a, const Subspace& ideal)
{
    if (!is_two_sided_ideal(a, ideal))
        throw AlgebraError("subspace is not a two-sided ideal");
    std::vector<bool> pivot(a.dim(), false);
    for (auto p : ideal.pivots())
        pivot[p] = true;
    Quotient q{TraceAlgebra{}, {}, ideal};
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!pivot[i])
            q.kept.push_back(i);
    const std::size_t qd = q.kept.size();
    if (qd > 0)
        for (const auto& v : ideal.basis())
            if (a.trace(v) != 0)
                throw AlgebraError("ideal is not trace stable: t(" + format_vector(v) + ") != 0");

    std::vector<std::string> labels;
    TraceAlgebra::SparseTable table(qd, std::vector<std::vector<std::pair<std::size_t, Rational>>>(qd));
    QVector trace(qd);
    for (std::size_t i = 0; i < qd; ++i) {
        labels.push_back(a.labels()[q.kept[i]]);
        trace[i] = a.trace_vector()[q.kept[i]];
        for (std::size_t j = 0; j < qd; ++j) {
            auto p = q.project(a.multiply(a.basis_vector(q.kept[i]), a.basis_vector(q.kept[j])));
            for (std::size_t k = 0; k < qd; ++k)
                if (p[k] != 0)
                    table[i][j].emplace_back(k, p[k]);
        }
    }
    QVector unit = q.project(a.unit());
    q.algebra = make_algebra(std::move(labels), std::move(table), std::move(unit), std::move(trace));
    return q;
}

/// Preimage in A of the trace kernel of A/I.
inline Subspace radical_kernel(const TraceAlgebra& a, const Subspace& ideal)
{
    if (!is_two_sided_ideal(a, ideal))
        throw AlgebraError("subspace is not a two-sided ideal");
    for (const auto& v : ideal.basis()) {
        auto tv = a.unit();
        for (auto& x : tv)
            x *= a.trace(v);
        if (!ideal.contains(tv))
            throw AlgebraError("ideal is not trace stable: t(" + format_vector(v) + ")*1 is outside it");
    }
    if (ideal.dim() == a.dim())
        return ideal;
    auto q = quotient(a, ideal);
    auto k = trace_kernel(q.algebra);
    std::vector<QVector> gens = ideal.basis();
    for (const auto& v : k.basis())
        gens.push_back(q.lift(v));
    return Subspace::span(gens, a.dim());
}

/// I.J = IJ + A t(IJ) for trace ideals with scalar traces.
inline Subspace ideal_dot(const TraceAlgebra& a, const Subspace& i, const Subspace& j)
{
    std::vector<QVector> products;
    for (const auto& u : i.basis())
        for (const auto& v : j.basis()) {
            auto p = a.multiply(u, v);
            if (a.trace(p) != 0)
                return Subspace::whole(a.dim());
            products.push_back(std::move(p));
        }
    return Subspace::span(products, a.dim());
}

/// Least m >= 1 with v^m = 0, searching up to max_power.
inline std::optional<unsigned> nilpotency_index(const TraceAlgebra& a, const QVector& v, unsigned max_power)
{
    QVector p = v;
    for (unsigned m = 1; m <= max_power; ++m) {
        if (std::all_of(p.begin(), p.end(), [](const Rational& x) { return x == 0; }))
            return m;
        p = a.multiply(p, v);
    }
    return std::nullopt;
}

/// Evaluates a trace polynomial at vectors of A; trace symbols become scalars t(.), tr(1) becomes t(1).
inline QVector evaluate(const TracePoly& p, const TraceAlgebra& a, const std::map<Letter, QVector>& assignment)
{
    auto word_value = [&](const Word& w) {
        QVector v = a.unit();
        for (Letter l : w.letters) {
            auto it = assignment.find(l);
            if (it == assignment.end())
                throw UnmappedVariable(l);
            v = a.multiply(v, it->second);
        }
        return v;
    };
    QVector r = a.zero();
    for (const auto& [k, c] : p.terms()) {
        Rational s = c;
        for (const auto& t : k.traces) {
            s *= a.trace(word_value(t.representative()));
            if (s == 0)
                break;
        }
        if (s == 0)
            continue;
        auto w = word_value(k.word);
        for (std::size_t i = 0; i < a.dim(); ++i)
            r[i] += s * w[i];
    }
    return r;
}

struct ChDegreeResult {
    std::optional<unsigned> degree;
    std::string diagnostic;
    /// Basis indices of the lexicographically least failing tuple, when the identity fails.
    std::vector<std::size_t> witness;
};

namespace detail {

/// Index of the least basis tuple (in lexicographic order, range [begin, end)) on which the
/// multilinear polynomial does not vanish, or end.
inline std::size_t first_failing_tuple(const TracePoly& p, const TraceAlgebra& a, unsigned arity, std::size_t begin,
                                       std::size_t end)
{
    const std::size_t d = a.dim();
    for (std::size_t idx = begin; idx < end; ++idx) {
        std::map<Letter, QVector> assign;
        std::size_t rest = idx;
        for (unsigned v = arity; v >= 1; --v) {
            assign[v] = a.basis_vector(rest % d);
            rest /= d;
        }
        auto r = evaluate(p, a, assign);
        if (std::any_of(r.begin(), r.end(), [](const Rational& x) { return x != 0; }))
            return idx;
    }
    return end;
}

} // namespace detail

/// True iff a multilinear polynomial in x1..x_arity vanishes on all basis tuples (hence everywhere).
/// On failure the least failing tuple index is returned through witness.
inline bool multilinear_vanishes(const TracePoly& p, const TraceAlgebra& a, unsigned arity,
                                 std::vector<std::size_t>* witness = nullptr, unsigned threads = 1)
{
    const std::size_t d = a.dim();
    std::size_t total = 1;
    for (unsigned i = 0; i < arity; ++i)
        total *= d;
    std::size_t found = total;
    if (threads <= 1 || total < 64) {
        found = detail::first_failing_tuple(p, a, arity, 0, total);
    } else {
        std::vector<std::size_t> results(threads, total);
        std::vector<std::thread> pool;
        std::size_t chunk = (total + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t b = std::min(total, t * chunk), e = std::min(total, (t + 1) * chunk);
            pool.emplace_back([&, t, b, e] {
                auto r = detail::first_failing_tuple(p, a, arity, b, e);
                results[t] = (r == e) ? total : r;
            });
        }
        for (auto& th : pool)
            th.join();
        found = *std::min_element(results.begin(), results.end());
    }
    if (found == total)
        return true;
    if (witness) {
        witness->assign(arity, 0);
        std::size_t rest = found;
        for (unsigned v = arity; v >= 1; --v) {
            (*witness)[v - 1] = rest % d;
            rest /= d;
        }
    }
    return false;
}

/// The n <= n_max with t(1) = n for which the multilinear n-th Cayley-Hamilton identity holds.
inline ChDegreeResult ch_degree(const TraceAlgebra& a, unsigned n_max, unsigned threads = 1)
{
    if (n_max < 1)
        throw std::invalid_argument("ch_degree needs n_max >= 1");
    ChDegreeResult res;
    Rational t1 = a.trace(a.unit());
    if (!is_integer(t1) || t1 < 1) {
        res.diagnostic = "t(1) = " + t1.get_str() + " is not a positive integer";
        return res;
    }
    if (t1 > n_max) {
        res.diagnostic = "t(1) = " + t1.get_str() + " exceeds n_max = " + std::to_string(n_max);
        return res;
    }
    unsigned n = static_cast<unsigned>(t1.get_num().get_ui());
    if (!multilinear_vanishes(ch_multilinear(static_cast<int>(n)), a, n, &res.witness, threads)) {
        std::ostringstream os;
        os << "t(1) = " << n << " but CH(x1..x" << n << ") fails at (";
        for (std::size_t i = 0; i < res.witness.size(); ++i)
            os << (i ? ", " : "") << a.labels()[res.witness[i]];
        os << ")";
        res.diagnostic = os.str();
        return res;
    }
    res.degree = n;
    res.diagnostic = "Cayley-Hamilton of degree " + std::to_string(n);
    return res;
}

/// Weights a_i with t = sum a_i tr on the supplied split blocks.
inline WeightedType recover_weights(const TraceAlgebra& a, const std::vector<MatrixBlock>& blocks)
{
    if (blocks.empty())
        throw AlgebraError("no blocks supplied");
    std::vector<unsigned> sizes, weights;
    QVector unit_sum(a.dim());
    std::size_t total_dim = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& blk = blocks[b];
        const unsigned m = blk.size;
        if (m == 0 || blk.units.size() != static_cast<std::size_t>(m) * m)
            throw AlgebraError("block " + std::to_string(b + 1) + " must list m*m matrix units");
        total_dim += blk.units.size();
        for (unsigned h = 0; h < m; ++h)
            for (unsigned k = 0; k < m; ++k)
                for (unsigned l = 0; l < m; ++l)
                    for (unsigned r = 0; r < m; ++r) {
                        auto p = a.multiply(blk.units[h * m + k], blk.units[l * m + r]);
                        QVector expect = (k == l) ? blk.units[h * m + r] : a.zero();
                        if (p != expect)
                            throw AlgebraError("block " + std::to_string(b + 1) + " units do not multiply as e_hk e_lr");
                    }
        QVector id(a.dim());
        for (unsigned h = 0; h < m; ++h)
            for (std::size_t i = 0; i < a.dim(); ++i)
                id[i] += blk.units[h * m + h][i];
        for (std::size_t i = 0; i < a.dim(); ++i)
            unit_sum[i] += id[i];
        Rational w = a.trace(id) / m;
        for (unsigned h = 0; h < m; ++h)
            for (unsigned k = 0; k < m; ++k) {
                Rational expect = (h == k) ? w : Rational(0);
                if (a.trace(blk.units[h * m + k]) != expect)
                    throw AlgebraError("trace is not a multiple of the matrix trace on block " + std::to_string(b + 1));
            }
        if (!is_integer(w) || w <= 0)
            throw AlgebraError("trace is not n-CH for any n: block " + std::to_string(b + 1) + " has weight " +
                               w.get_str());
        sizes.push_back(m);
        weights.push_back(static_cast<unsigned>(w.get_num().get_ui()));
    }
    if (unit_sum != a.unit() || total_dim != a.dim())
        throw AlgebraError("blocks do not decompose the algebra");
    WeightedType wt(sizes, weights);
    if (Rational(wt.n()) != a.trace(a.unit()))
        throw AlgebraError("weights do not add up to t(1)");
    return wt;
}

} // namespace tracealg
