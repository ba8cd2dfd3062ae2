#include "tracealg/chident.hpp"
#include "tracealg/freetrace_io.hpp"
#include "tracealg/genmat.hpp"

#include <gtest/gtest.h>

using namespace tracealg;

namespace {

TracePoly x(Letter i) { return TracePoly::variable(i); }
TracePoly tr(const TracePoly& p) { return formal_trace(p); }

QMatrix diag(std::initializer_list<long> d)
{
    QMatrix m(d.size(), d.size());
    std::size_t i = 0;
    for (long v : d) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

} // namespace

TEST(GenericMatrix, EntriesAreIndependentVariables)
{
    auto g1 = generic_matrix(1, 1);
    ASSERT_EQ(g1.rows(), 1u);
    EXPECT_EQ(g1(0, 0), MPoly::variable(generic_entry_var(1, 0, 0)));
    auto g2 = generic_matrix(1, 2);
    EXPECT_EQ(g2.trace(), MPoly::variable(generic_entry_var(1, 0, 0)) + MPoly::variable(generic_entry_var(1, 1, 1)));
    EXPECT_NE(generic_matrix(2, 2)(0, 1), g2(0, 1));
}

TEST(Evaluation, TraceOfIdentityAndUnitSymbol)
{
    auto r = eval(tr(x(1)), MatrixAssignment{{1, QMatrix::identity(3)}}, 3);
    EXPECT_EQ(r, QMatrix::scalar(3, Rational(3)));
    auto unit = eval(TracePoly::trace_of(Word{}), MatrixAssignment{}, 4);
    EXPECT_EQ(unit, QMatrix::scalar(4, Rational(4)));
}

TEST(Evaluation, CommutingDiagonalMatrices)
{
    auto r = eval(x(1) * x(2) - x(2) * x(1), MatrixAssignment{{1, diag({1, 2, 3})}, {2, diag({-1, 5, 0})}}, 3);
    EXPECT_TRUE(r.is_zero());
}

TEST(Evaluation, RejectsWrongSizes)
{
    EXPECT_THROW(eval(x(1), MatrixAssignment{{1, QMatrix::identity(2)}}, 3), std::invalid_argument);
}

TEST(Evaluation, AgreesWithDirectMatrixArithmetic)
{
    std::mt19937_64 rng(5);
    auto p = x(1) * x(2) * x(1) - tr(x(1) * x(2)) * x(2) + tr(x(1)) * tr(x(2) * x(2)) * Rational(1, 3);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_integer_matrix(3, rng), b = random_integer_matrix(3, rng);
        QMatrix expect = a * b * a - b * (a * b).trace() + QMatrix::scalar(3, a.trace() * (b * b).trace() / 3);
        EXPECT_EQ(eval(p, MatrixAssignment{{1, a}, {2, b}}, 3), expect);
    }
}

TEST(Evaluation, SymbolicEvaluationSpecializes)
{
    // Evaluating at generic matrices and then substituting entries equals evaluating at the entries.
    std::mt19937_64 rng(6);
    auto p = x(1) * x(1) * x(2) - tr(x(2)) * x(1) + tr(x(1) * x(2) * x(2));
    auto symbolic = eval(p, generic_assignment(p, 2), 2);
    for (int trial = 0; trial < 10; ++trial) {
        MatrixAssignment a{{1, random_integer_matrix(2, rng)}, {2, random_integer_matrix(2, rng)}};
        std::map<Var, Rational> point;
        for (const auto& [v, m] : a)
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    point[generic_entry_var(v, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j))] = m(i, j);
        auto numeric = eval(p, a, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                EXPECT_EQ(symbolic(i, j).evaluate(point), numeric(i, j));
    }
}

TEST(TraceIdentities, CayleyHamiltonOnGenericMatrices)
{
    EXPECT_TRUE(is_trace_identity(ch_poly(1), 1));
    EXPECT_TRUE(is_trace_identity(ch_poly(2), 2));
    EXPECT_FALSE(is_trace_identity(ch_poly(2), 3));
    EXPECT_TRUE(is_trace_identity(ch_poly(3), 2));
    EXPECT_TRUE(is_trace_identity(ch_poly(3), 3));
    EXPECT_TRUE(is_trace_identity(ch_multilinear(2), 2));
    EXPECT_FALSE(is_trace_identity(ch_multilinear(2), 3));
}

TEST(TraceIdentities, FrobeniusTable)
{
    for (int m = 1; m <= 3; ++m)
        for (std::size_t n = 1; n <= 3; ++n) {
            bool expect = n <= static_cast<std::size_t>(m);
            EXPECT_EQ(is_trace_identity(t_multilinear(m + 1), n), expect) << "m=" << m << " n=" << n;
        }
}

TEST(TraceIdentities, CommutatorTraceVanishes)
{
    EXPECT_TRUE(is_trace_identity(tr(x(1) * x(2)) - tr(x(2) * x(1)), 3));
    EXPECT_FALSE(is_trace_identity(x(1) * x(2) - x(2) * x(1), 2));
    EXPECT_TRUE(is_trace_identity(x(1) * x(2) - x(2) * x(1), 1));
}

TEST(RandomSearch, FindsVerifiedWitnesses)
{
    auto w = random_counterexample(ch_poly(2), 3, 10);
    ASSERT_TRUE(w.has_value());
    EXPECT_FALSE(eval(ch_poly(2), *w, 3).is_zero());
    for (int m = 1; m <= 3; ++m) {
        auto f = random_counterexample(t_multilinear(m + 1), static_cast<std::size_t>(m + 1), 50, 7);
        ASSERT_TRUE(f.has_value()) << "m=" << m;
        EXPECT_FALSE(eval(t_multilinear(m + 1), *f, static_cast<std::size_t>(m + 1)).is_zero());
    }
}

TEST(RandomSearch, NoWitnessForIdentities)
{
    EXPECT_FALSE(random_counterexample(ch_poly(2), 2, 10).has_value());
    EXPECT_FALSE(random_counterexample(tr(x(1) * x(2)) - tr(x(2) * x(1)), 4, 10).has_value());
    EXPECT_THROW(random_counterexample(ch_poly(2), 2, 0), std::invalid_argument);
}

TEST(RandomSearch, DeterministicForFixedSeed)
{
    auto a = random_counterexample(ch_poly(2), 3, 10, 99);
    auto b = random_counterexample(ch_poly(2), 3, 10, 99);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(*a, *b);
}

TEST(MatrixFacts, NilpotentHasZeroTraces)
{
    // strictly upper triangular 3x3: every power has zero trace
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        QMatrix n(3, 3);
        n(0, 1) = static_cast<long>(rng() % 7) - 3;
        n(0, 2) = static_cast<long>(rng() % 7) - 3;
        n(1, 2) = static_cast<long>(rng() % 7) - 3;
        for (unsigned k = 1; k <= 3; ++k)
            EXPECT_EQ(eval(tr(x(1).pow(k)), MatrixAssignment{{1, n}}, 3)(0, 0), 0);
        // CH_3 reduces to x^3 = 0
        EXPECT_TRUE(eval(x(1).pow(3), MatrixAssignment{{1, n}}, 3).is_zero());
    }
}

TEST(MatrixFacts, IdempotentTraceIsRank)
{
    QMatrix e(3, 3, {1, 2, 0, 0, 0, 0, 0, 0, 1});
    ASSERT_EQ(e * e, e);
    auto t = eval(tr(x(1)), MatrixAssignment{{1, e}}, 3)(0, 0);
    EXPECT_TRUE(is_integer(t));
    EXPECT_EQ(t, Rational(static_cast<long>(rank(e))));
}

TEST(DiagonalModel, TwoDistinctEigenvaluesOneRepeated)
{
    auto m = diagonal_model({1, 2});
    EXPECT_EQ(m.n, 3u);
    MPoly u = MPoly::variable(1), v = MPoly::variable(2);
    EXPECT_EQ(m.alpha[1], u + v * Rational(2));
    EXPECT_EQ(m.alpha[2], u * v * Rational(2) + v * v);
    EXPECT_EQ(m.alpha[3], u * v * v);
    for (const auto& c : m.checks)
        EXPECT_EQ(c.holds, c.asserted) << c.name;
    std::size_t asserted = 0;
    for (const auto& c : m.checks)
        asserted += c.asserted;
    EXPECT_GE(asserted, 7u);
}

TEST(DiagonalModel, SimpleEigenvaluesAreElementarySymmetric)
{
    auto m = diagonal_model({1, 1});
    MPoly a = MPoly::variable(1), b = MPoly::variable(2);
    EXPECT_EQ(m.alpha[1], a + b);
    EXPECT_EQ(m.alpha[2], a * b);
    for (const auto& c : m.checks)
        EXPECT_TRUE(c.holds) << c.name;
    EXPECT_THROW(discriminant_relation({1, 1}), std::invalid_argument);
    EXPECT_THROW(diagonal_model({}), std::invalid_argument);
    EXPECT_THROW(diagonal_model({1, 0}), std::invalid_argument);
}

TEST(Discriminant, CubicWithRepeatedRoot)
{
    auto a = MPoly::variable(coefficient_symbol(1)), b = MPoly::variable(coefficient_symbol(2)),
         c = MPoly::variable(coefficient_symbol(3));
    MPoly expect = a * b * c * Rational(18) - a.pow(3) * c * Rational(4) + a * a * b * b - b.pow(3) * Rational(4) -
                   c * c * Rational(27);
    auto rel = discriminant_relation({1, 2});
    EXPECT_EQ(rel, expect);
    EXPECT_TRUE(rel.substitute(diagonal_model({1, 2}).symbol_values()).is_zero());
    for (unsigned w : symbol_weights(rel))
        EXPECT_EQ(w, 6u);
    EXPECT_EQ(rel.total_degree(), 4u);
    EXPECT_EQ(rel.to_string(diagonal_var_name), "-4*a^3*c + a^2*b^2 - 4*b^3 + 18*a*b*c - 27*c^2");
}

TEST(Discriminant, QuadraticDoubleRoot)
{
    auto rel = discriminant_relation({2});
    auto a = MPoly::variable(coefficient_symbol(1)), b = MPoly::variable(coefficient_symbol(2));
    EXPECT_EQ(rel, a * a - b * Rational(4));
    EXPECT_TRUE(rel.substitute(diagonal_model({2}).symbol_values()).is_zero());
}

TEST(Discriminant, MixedWeightQuarticIsNotARelation)
{
    auto a = MPoly::variable(coefficient_symbol(1)), b = MPoly::variable(coefficient_symbol(2)),
         c = MPoly::variable(coefficient_symbol(3));
    MPoly quartic = a * a * b * Rational(3) - a * b * c * Rational(162) + c * c * Rational(243) -
                    a * a * b * b * Rational(12) + a.pow(3) * c * Rational(18) + b.pow(3) * Rational(36);
    auto w = symbol_weights(quartic);
    EXPECT_NE(std::count(w.begin(), w.end(), 6u), static_cast<long>(w.size()));
    EXPECT_FALSE(quartic.substitute(diagonal_model({1, 2}).symbol_values()).is_zero());
}

TEST(Discriminant, LargerRepeatedModels)
{
    for (auto mult : std::vector<std::vector<unsigned>>{{3}, {2, 2}, {1, 1, 2}}) {
        auto rel = discriminant_relation(mult);
        EXPECT_FALSE(rel.is_zero());
        EXPECT_TRUE(rel.substitute(diagonal_model(mult).symbol_values()).is_zero());
    }
}
