#pragma once

// Evaluation of trace polynomials on generic and concrete matrices, trace-identity checks,
// one-variable diagonal models with multiplicities, and discriminant relations.

#include "tracealg/freetrace.hpp"
#include "tracealg/linalg.hpp"
#include "tracealg/mpoly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracealg {

using PolyMatrix = Matrix<MPoly>;

/// Default seed for every randomized path.
constexpr std::uint64_t default_seed = 20240611;

/// The n x n matrix whose (h, k) entry is the variable generic_entry_var(i, h, k).
inline PolyMatrix generic_matrix(Letter i, std::size_t n)
{
    if (n < 1 || n > 255)
        throw std::invalid_argument("generic matrix size must be in 1..255");
    if (i > 0x7fff)
        throw std::invalid_argument("generic matrix index too large");
    PolyMatrix m(n, n);
    for (std::size_t h = 0; h < n; ++h)
        for (std::size_t k = 0; k < n; ++k)
            m(h, k) = MPoly::variable(
                generic_entry_var(i, static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(k)));
    return m;
}

namespace detail {

template <class T>
class WordEvaluator {
public:
    WordEvaluator(const std::map<Letter, Matrix<T>>& assignment, std::size_t n) : assignment_(assignment), n_(n) {}

    const Matrix<T>& word(const Word& w)
    {
        auto it = words_.find(w);
        if (it != words_.end())
            return it->second;
        Matrix<T> m = Matrix<T>::identity(n_);
        if (!w.empty()) {
            auto a = assignment_.find(w.letters.back());
            if (a == assignment_.end())
                throw UnmappedVariable(w.letters.back());
            Word prefix(std::vector<Letter>(w.letters.begin(), w.letters.end() - 1));
            m = word(prefix) * a->second;
        }
        return words_.emplace(w, std::move(m)).first->second;
    }

    const T& trace(const CyclicWord& c)
    {
        auto it = traces_.find(c);
        if (it == traces_.end())
            it = traces_.emplace(c, word(c.representative()).trace()).first;
        return it->second;
    }

private:
    const std::map<Letter, Matrix<T>>& assignment_;
    std::size_t n_;
    std::map<Word, Matrix<T>> words_;
    std::map<CyclicWord, T> traces_;
};

} // namespace detail

/// Evaluates p with words as matrix products, tr(w) as the matrix trace and tr(1) as n.
template <class T>
Matrix<T> eval(const TracePoly& p, const std::map<Letter, Matrix<T>>& assignment, std::size_t n)
{
    for (const auto& [v, m] : assignment)
        if (m.rows() != n || m.cols() != n)
            throw std::invalid_argument("matrix for x" + std::to_string(v) + " is not " + std::to_string(n) + "x" +
                                        std::to_string(n));
    detail::WordEvaluator<T> ev(assignment, n);
    Matrix<T> result(n, n);
    for (const auto& [k, c] : p.terms()) {
        T s(c);
        for (const auto& t : k.traces) {
            s *= ev.trace(t);
            if (s == T(0))
                break;
        }
        if (s == T(0))
            continue;
        if (k.word.empty()) {
            for (std::size_t i = 0; i < n; ++i)
                result(i, i) += s;
        } else {
            result += ev.word(k.word) * s;
        }
    }
    return result;
}

/// Assignment of a fresh generic matrix to every variable of p.
inline std::map<Letter, PolyMatrix> generic_assignment(const TracePoly& p, std::size_t n)
{
    std::map<Letter, PolyMatrix> a;
    for (Letter v : p.variables())
        a.emplace(v, generic_matrix(v, n));
    return a;
}

/// Exact symbolic test: p vanishes on n x n generic matrices.
inline bool is_trace_identity(const TracePoly& p, std::size_t n)
{
    return eval(p, generic_assignment(p, n), n).is_zero();
}

using MatrixAssignment = std::map<Letter, QMatrix>;

/// Random integer matrix with entries in [-bound, bound], drawn from a 64-bit Mersenne twister.
inline QMatrix random_integer_matrix(std::size_t n, std::mt19937_64& rng, unsigned bound = 3)
{
    QMatrix m(n, n);
    for (std::size_t h = 0; h < n; ++h)
        for (std::size_t k = 0; k < n; ++k)
            m(h, k) = static_cast<long>(rng() % (2 * bound + 1)) - static_cast<long>(bound);
    return m;
}

/// Searches random integer assignments for one on which p does not vanish. Any returned
/// assignment has been evaluated exactly to a nonzero matrix.
inline std::optional<MatrixAssignment> random_counterexample(const TracePoly& p, std::size_t n, unsigned trials,
                                                             std::uint64_t seed = default_seed)
{
    if (trials < 1)
        throw std::invalid_argument("random_counterexample needs at least one trial");
    std::mt19937_64 rng(seed);
    auto vars = p.variables();
    for (unsigned t = 0; t < trials; ++t) {
        MatrixAssignment a;
        for (Letter v : vars)
            a.emplace(v, random_integer_matrix(n, rng, 2 + t % 3));
        if (!eval(p, a, n).is_zero())
            return a;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------------------------
// One-variable diagonal models

/// Variable ids used by the diagonal models: eigenvalues are 1..p, coefficient symbols are
/// coefficient_symbol(j), the polynomial variable is poly_var and the matrix variable is matrix_var.
constexpr Var coefficient_symbol(unsigned j) { return 1000 + j; }
constexpr Var poly_var = 998;
constexpr Var matrix_var = 999;

inline std::string diagonal_var_name(Var v)
{
    if (v == poly_var)
        return "t";
    if (v == matrix_var)
        return "X";
    if (v > 1000 && v <= 1026)
        return std::string(1, static_cast<char>('a' + (v - 1001)));
    if (v > 1000)
        return "a" + std::to_string(v - 1000);
    return "x" + std::to_string(v);
}

/// Names eigenvalues u, v for the two-eigenvalue models.
inline std::string two_eigenvalue_name(Var v)
{
    if (v == 1)
        return "u";
    if (v == 2)
        return "v";
    return diagonal_var_name(v);
}

struct NamedCheck {
    std::string name;
    bool holds = false;
    /// False for statements that are only reported, not required to hold.
    bool asserted = true;
};

struct DiagonalModel {
    std::vector<unsigned> multiplicities;
    unsigned n = 0;
    PolyMatrix x;
    /// alpha[j] for j = 0..n with alpha[0] = 1; the characteristic polynomial is sum (-1)^j alpha_j t^{n-j}.
    std::vector<MPoly> alpha;
    std::vector<NamedCheck> checks;

    /// Substitution coefficient_symbol(j) -> alpha_j.
    std::map<Var, MPoly> symbol_values() const
    {
        std::map<Var, MPoly> m;
        for (unsigned j = 1; j <= n; ++j)
            m.emplace(coefficient_symbol(j), alpha[j]);
        return m;
    }
};

/// Polynomial h(t) = t^n - A_1 t^{n-1} + A_2 t^{n-2} - ... in the coefficient symbols A_j.
inline MPoly generic_monic(unsigned n)
{
    MPoly h;
    MPoly t = MPoly::variable(poly_var);
    for (unsigned j = 0; j <= n; ++j) {
        MPoly coeff = (j == 0) ? MPoly(1) : MPoly::variable(coefficient_symbol(j));
        h += coeff * t.pow(n - j) * Rational(j % 2 == 0 ? 1 : -1);
    }
    return h;
}

namespace detail {

inline void add_sica_checks(DiagonalModel& m)
{
    MPoly u = MPoly::variable(1), v = MPoly::variable(2);
    MPoly a = m.alpha[1], b = m.alpha[2], c = m.alpha[3];
    MPoly d = u - v;
    MPoly d2 = d * d;
    m.checks.push_back({"a^2 - 3b = (u - v)^2", a * a - b * Rational(3) == d2});
    m.checks.push_back({"ab - 9c = 2v(u - v)^2", a * b - c * Rational(9) == v * d2 * Rational(2)});
    m.checks.push_back({"9c + a^3 - 4ab = u(u - v)^2", c * Rational(9) + a.pow(3) - a * b * Rational(4) == u * d2});
    m.checks.push_back({"3v^2 - 2av + b = 0", (v * v * Rational(3) - a * v * Rational(2) + b).is_zero()});
    m.checks.push_back({"u^2 - 4au + a^2 - 4b = 0 (reported only)",
                        (u * u - a * u * Rational(4) + a * a - b * Rational(4)).is_zero(), false});

    // Minimal polynomial scaled into the coefficient ring: each factor is linear in X.
    MPoly X = MPoly::variable(matrix_var);
    MPoly A = MPoly::variable(coefficient_symbol(1)), B = MPoly::variable(coefficient_symbol(2)),
          C = MPoly::variable(coefficient_symbol(3));
    MPoly disc_like = A * A - B * Rational(3);
    MPoly first = disc_like * X - (C * Rational(9) + A.pow(3) - A * B * Rational(4));
    MPoly second = disc_like * X - (A * B - C * Rational(9)) * Rational(1, 2);
    auto values = m.symbol_values();
    MPoly scaled = (first * second).substitute(values);
    MPoly expect = d2 * d2 * (X - u) * (X - v);
    m.checks.push_back({"(a^2-3b)^2 (X-u)(X-v) in a,b,c: product of two linear factors in X", scaled == expect});

    // Evaluate the X-polynomial at the matrix itself.
    auto coeffs = coefficients_in(scaled, matrix_var);
    PolyMatrix acc(3, 3), power = PolyMatrix::identity(3);
    for (const auto& cf : coeffs) {
        acc += power * cf;
        power = power * m.x;
    }
    m.checks.push_back({"scaled minimal polynomial vanishes at X = diag(u, v, v)", acc.is_zero()});

    MPoly variant_first = disc_like * X * X - (C * Rational(9) + A.pow(3) - A * B * Rational(4));
    MPoly variant = (variant_first * second).substitute(values);
    auto pc = coefficients_in(variant, matrix_var);
    PolyMatrix pacc(3, 3);
    power = PolyMatrix::identity(3);
    for (const auto& cf : pc) {
        pacc += power * cf;
        power = power * m.x;
    }
    m.checks.push_back({"variant with X^2 in the first factor vanishes at X", pacc.is_zero(), false});
}

} // namespace detail

/// Diagonal matrix with eigenvalue x_i repeated a_i times, and its characteristic coefficients.
inline DiagonalModel diagonal_model(const std::vector<unsigned>& multiplicities)
{
    if (multiplicities.empty())
        throw std::invalid_argument("diagonal_model needs at least one multiplicity");
    DiagonalModel m;
    m.multiplicities = multiplicities;
    for (unsigned a : multiplicities) {
        if (a < 1)
            throw std::invalid_argument("multiplicities must be positive");
        m.n += a;
    }
    if (m.n > 64)
        throw std::invalid_argument("diagonal model too large");
    std::vector<MPoly> roots;
    for (std::size_t i = 0; i < multiplicities.size(); ++i)
        for (unsigned r = 0; r < multiplicities[i]; ++r)
            roots.push_back(MPoly::variable(static_cast<Var>(i + 1)));
    m.x = PolyMatrix(m.n, m.n);
    for (unsigned i = 0; i < m.n; ++i)
        m.x(i, i) = roots[i];

    m.alpha.assign(m.n + 1, MPoly(0));
    m.alpha[0] = MPoly(1);
    for (unsigned r = 0; r < m.n; ++r)
        for (unsigned j = r + 1; j >= 1; --j)
            m.alpha[j] += m.alpha[j - 1] * roots[r];

    MPoly t = MPoly::variable(poly_var);
    MPoly charpoly = determinant(PolyMatrix::scalar(m.n, t) - m.x);
    MPoly product(1);
    for (const auto& r : roots)
        product *= (t - r);
    MPoly from_alpha = generic_monic(m.n).substitute(m.symbol_values());
    m.checks.push_back({"det(tI - X) = prod (t - x_i)^a_i", charpoly == product});
    m.checks.push_back({"det(tI - X) = sum (-1)^j alpha_j t^(n-j)", charpoly == from_alpha});

    if (multiplicities == std::vector<unsigned>{1, 2})
        detail::add_sica_checks(m);
    return m;
}

/// Primitive integer form of the discriminant of h(t) = t^n - A_1 t^{n-1} + ..., computed as a
/// Sylvester resultant of h and h'. It vanishes on every model with a repeated eigenvalue.
inline MPoly discriminant_relation(const std::vector<unsigned>& multiplicities)
{
    bool repeated = false;
    unsigned n = 0;
    for (unsigned a : multiplicities) {
        if (a < 1)
            throw std::invalid_argument("multiplicities must be positive");
        repeated = repeated || a >= 2;
        n += a;
    }
    if (!repeated)
        throw std::invalid_argument("no forced relation: all eigenvalues are simple");

    auto h = coefficients_in(generic_monic(n), poly_var);            // h[k] = coefficient of t^k
    std::vector<MPoly> dh(n);                                         // derivative
    for (unsigned k = 1; k <= n; ++k)
        dh[k - 1] = h[k] * Rational(k);
    const std::size_t size = 2 * n - 1;
    PolyMatrix s(size, size);
    for (unsigned r = 0; r + 1 < n; ++r)
        for (unsigned k = 0; k <= n; ++k)
            s(r, r + (n - k)) = h[k];
    for (unsigned r = 0; r < n; ++r)
        for (unsigned k = 0; k < n; ++k)
            s(n - 1 + r, r + (n - 1 - k)) = dh[k];
    MPoly res = determinant(s);
    if ((n * (n - 1) / 2) % 2 == 1)
        res = -res;
    MPoly rel = res.primitive();

    auto model = diagonal_model(multiplicities);
    if (!rel.substitute(model.symbol_values()).is_zero())
        throw std::logic_error("discriminant does not vanish on the diagonal model");
    return rel;
}

/// Weighted degrees of a polynomial in the coefficient symbols, weight(A_j) = j; empty for zero.
inline std::vector<unsigned> symbol_weights(const MPoly& p)
{
    std::vector<unsigned> w;
    for (const auto& [m, c] : p.terms()) {
        unsigned s = 0;
        for (const auto& [v, e] : m.factors())
            s += (v > 1000 ? v - 1000 : 0) * e;
        w.push_back(s);
    }
    return w;
}

} // namespace tracealg
