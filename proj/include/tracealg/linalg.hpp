#pragma once

// Dense matrices over an exact ring, and exact row reduction over the rationals.

#include "tracealg/rational.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tracealg {

/// Row-major dense matrix. T must be a commutative ring with T(0), T(1).
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("matrix data size does not match its shape");
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    static Matrix scalar(std::size_t n, const T& s)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = s;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<T>& data() const noexcept { return data_; }

    T trace() const
    {
        if (!is_square())
            throw std::invalid_argument("trace of a non-square matrix");
        T s(0);
        for (std::size_t i = 0; i < rows_; ++i)
            s += (*this)(i, i);
        return s;
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (!(x == T(0)))
                return false;
        return true;
    }

    Matrix& operator+=(const Matrix& o)
    {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += o.data_[i];
        return *this;
    }

    Matrix& operator-=(const Matrix& o)
    {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= o.data_[i];
        return *this;
    }

    Matrix& operator*=(const T& s)
    {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void check_same_shape(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using QVector = std::vector<Rational>;

/// Division-free determinant (Berkowitz). Works over any commutative ring.
template <class T>
T determinant(const Matrix<T>& a)
{
    if (!a.is_square())
        throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return T(1);
    // Characteristic-polynomial coefficients of the leading r x r submatrix, built up one row at a time.
    std::vector<T> poly{T(1), -a(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        // Toeplitz column: 1, -a_rr, -R A^0 C, -R A C, ..., -R A^{r-1} C
        std::vector<T> col(r + 2, T(0));
        col[0] = T(1);
        col[1] = -a(r, r);
        std::vector<T> v(r);
        for (std::size_t i = 0; i < r; ++i)
            v[i] = a(i, r);
        for (std::size_t k = 0; k < r; ++k) {
            T s(0);
            for (std::size_t j = 0; j < r; ++j)
                s += a(r, j) * v[j];
            col[k + 2] = -s;
            std::vector<T> next(r, T(0));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    next[i] += a(i, j) * v[j];
            v = std::move(next);
        }
        std::vector<T> out(r + 2, T(0));
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= i && j < poly.size(); ++j)
                out[i] += col[i - j] * poly[j];
        poly = std::move(out);
    }
    T det = poly.back();
    return (n % 2 == 0) ? det : T(-det);
}

/// Result of reduced row-echelon reduction: the nonzero rows and their pivot columns.
struct Echelon {
    QMatrix rows;
    std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form of the rows of m; zero rows are dropped.
inline Echelon rref(const QMatrix& m)
{
    std::vector<QVector> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        QVector r(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j)
            r[j] = m(i, j);
        rows.push_back(std::move(r));
    }
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols() && lead < rows.size(); ++col) {
        std::size_t sel = lead;
        while (sel < rows.size() && rows[sel][col] == 0)
            ++sel;
        if (sel == rows.size())
            continue;
        std::swap(rows[sel], rows[lead]);
        Rational inv = 1 / rows[lead][col];
        for (auto& x : rows[lead])
            x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == lead || rows[i][col] == 0)
                continue;
            Rational f = rows[i][col];
            for (std::size_t j = col; j < m.cols(); ++j)
                rows[i][j] -= f * rows[lead][j];
        }
        pivots.push_back(col);
        ++lead;
    }
    QMatrix out(pivots.size(), m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = rows[i][j];
    return {std::move(out), std::move(pivots)};
}

inline std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

inline QMatrix rows_to_matrix(const std::vector<QVector>& rows, std::size_t cols)
{
    QMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::invalid_argument("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

/// Basis of {x : m x = 0}, one vector per free column, in RREF-canonical form.
inline std::vector<QVector> nullspace(const QMatrix& m)
{
    auto e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        QVector v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.rows(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::optional<QMatrix> inverse(const QMatrix& m)
{
    if (!m.is_square())
        throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
        return std::nullopt;
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = e.rows(i, n + j);
    return inv;
}

/// Incrementally maintained row space; answers "does this vector enlarge the span?".
class IncrementalSpan {
public:
    explicit IncrementalSpan(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return rows_.size(); }

    /// Reduces v against the current basis; returns the residue.
    QVector reduce(QVector v) const
    {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& f = v[pivots_[i]];
            if (f == 0)
                continue;
            Rational c = f;
            for (std::size_t j = 0; j < dim_; ++j)
                if (rows_[i][j] != 0)
                    v[j] -= c * rows_[i][j];
        }
        return v;
    }

    bool contains(const QVector& v) const
    {
        auto r = reduce(v);
        for (const auto& x : r)
            if (x != 0)
                return false;
        return true;
    }

    /// Adds v if independent; returns true when the rank grew.
    bool insert(QVector v)
    {
        if (v.size() != dim_)
            throw std::invalid_argument("vector length mismatch");
        v = reduce(std::move(v));
        std::size_t p = 0;
        while (p < dim_ && v[p] == 0)
            ++p;
        if (p == dim_)
            return false;
        Rational inv = 1 / v[p];
        for (auto& x : v)
            x *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Rational f = rows_[i][p];
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < dim_; ++j)
                rows_[i][j] -= f * v[j];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    const std::vector<QVector>& rows() const noexcept { return rows_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

private:
    std::size_t dim_;
    std::vector<QVector> rows_;
    std::vector<std::size_t> pivots_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m)
{
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

} // namespace tracealg
