#pragma once

// Small algebras shared by the test programs.

#include "tracealg/findim.hpp"

namespace tracealg::testing {

using Entry = std::vector<std::pair<std::size_t, Rational>>;

/// Q[e]/(e^2) with t(1) = t1 and t(e) = te.
inline TraceAlgebra dual_numbers(Rational t1 = 2, Rational te = 0)
{
    TraceAlgebra::SparseTable t(2, std::vector<Entry>(2));
    t[0][0] = {{0, 1}};
    t[0][1] = {{1, 1}};
    t[1][0] = {{1, 1}};
    return make_algebra({"1", "e"}, t, {1, 0}, {t1, te});
}

/// Upper triangular 2x2 matrices, basis e11 e12 e22, with the matrix trace.
inline TraceAlgebra upper_triangular()
{
    TraceAlgebra::SparseTable t(3, std::vector<Entry>(3));
    t[0][0] = {{0, 1}};
    t[0][1] = {{1, 1}};
    t[1][2] = {{1, 1}};
    t[2][2] = {{2, 1}};
    return make_algebra({"e11", "e12", "e22"}, t, {1, 0, 1}, {1, 0, 1});
}

/// Q[x]/(x^3), basis 1 x x^2, trace 3 on the unit and 0 on the nilpotent part.
inline TraceAlgebra truncated_polynomials()
{
    TraceAlgebra::SparseTable t(3, std::vector<Entry>(3));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; i + j < 3; ++j)
            t[i][j] = {{i + j, 1}};
    return make_algebra({"1", "x", "x2"}, t, {1, 0, 0}, {3, 0, 0});
}

/// The same algebra with every trace value set to zero.
inline TraceAlgebra zero_trace(const TraceAlgebra& a)
{
    return make_algebra(a.labels(), a.table(), a.unit(), QVector(a.dim()));
}

} // namespace tracealg::testing
