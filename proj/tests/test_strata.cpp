#include "tracealg/strata.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace tracealg;

namespace {

StratumType T(std::vector<StratumType::Pair> p) { return StratumType(std::move(p)); }

} // namespace

TEST(Types, Enumeration)
{
    ASSERT_EQ(enumerate_types(1).size(), 1u);
    EXPECT_EQ(enumerate_types(1)[0], T({{1, 1}}));
    auto t2 = enumerate_types(2);
    ASSERT_EQ(t2.size(), 3u);
    EXPECT_EQ(t2[0], T({{2, 1}}));
    EXPECT_EQ(t2[1], T({{1, 2}}));
    EXPECT_EQ(t2[2], T({{1, 1}, {1, 1}}));
    auto t3 = enumerate_types(3);
    std::vector<StratumType> expect{T({{3, 1}}), T({{1, 3}}), T({{2, 1}, {1, 1}}), T({{1, 2}, {1, 1}}),
                                    T({{1, 1}, {1, 1}, {1, 1}})};
    EXPECT_EQ(t3, expect);
    EXPECT_THROW(enumerate_types(0), std::invalid_argument);
}

TEST(Types, CountsAndUniqueness)
{
    // number of multisets of (m, a) with sum m*a = n: 1, 3, 5, 11, 17, 34
    const std::size_t counts[] = {1, 3, 5, 11, 17, 34};
    for (unsigned n = 1; n <= 6; ++n) {
        auto ts = enumerate_types(n);
        EXPECT_EQ(ts.size(), counts[n - 1]) << "n=" << n;
        std::set<std::string> labels;
        for (const auto& t : ts) {
            EXPECT_EQ(t.n(), n);
            labels.insert(t.label());
            EXPECT_EQ(StratumType::from_weighted(t.to_weighted()), t);
        }
        EXPECT_EQ(labels.size(), ts.size());
    }
}

TEST(Types, LabelsAndValidation)
{
    EXPECT_EQ(T({{1, 1}, {2, 1}}).label(), "2/1 1/1");
    EXPECT_THROW(T({}), std::invalid_argument);
    EXPECT_THROW(T({{0, 1}}), std::invalid_argument);
}

TEST(Dimensions, Examples)
{
    EXPECT_EQ(stratum_dims(T({{3, 1}}), 2).stratum, 10);
    auto d = stratum_dims(T({{1, 1}, {1, 2}}), 2);
    EXPECT_EQ(d.stratum, 4);
    EXPECT_EQ(d.sheet, 8);
    EXPECT_EQ(d.stabilizer, 5);
    EXPECT_EQ(d.projective_stabilizer, 4);
    EXPECT_EQ(stratum_dims(T({{1, 1}, {1, 1}}), 2).stratum, 4);
    EXPECT_EQ(stratum_dims(T({{2, 1}}), 2).stratum, 5);
    EXPECT_THROW(stratum_dims(T({{2, 1}}), 1), std::invalid_argument);
}

TEST(Closure, Examples)
{
    EXPECT_TRUE(closure_leq(T({{1, 1}, {1, 1}}), T({{2, 1}})));
    EXPECT_FALSE(closure_leq(T({{2, 1}}), T({{1, 1}, {1, 1}})));
    EXPECT_TRUE(closure_leq(T({{1, 1}, {1, 2}}), T({{1, 1}, {1, 1}, {1, 1}})));
    EXPECT_FALSE(closure_leq(T({{1, 1}, {1, 1}, {1, 1}}), T({{1, 1}, {1, 2}})));
    // scalars sit inside everything
    for (const auto& t : enumerate_types(4))
        EXPECT_TRUE(closure_leq(T({{1, 4}}), t));
    EXPECT_THROW(closure_leq(T({{1, 1}}), T({{2, 1}})), std::invalid_argument);
}

TEST(Degenerations, Examples)
{
    auto a = maximal_degenerations(T({{2, 1}}), 2);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].type, T({{1, 1}, {1, 1}}));
    EXPECT_EQ(a[0].codim, 1);
    auto b = maximal_degenerations(T({{1, 1}, {1, 1}}), 2);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].type, T({{1, 2}}));
    EXPECT_EQ(b[0].codim, 2);
    auto c = maximal_degenerations(T({{2, 1}}), 3);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].codim, 3);
}

TEST(Degenerations, CodimensionMatchesDimensionDrop)
{
    for (unsigned ell = 2; ell <= 4; ++ell)
        for (unsigned n = 1; n <= 6; ++n)
            for (const auto& t : enumerate_types(n))
                for (const auto& d : maximal_degenerations(t, ell))
                    EXPECT_EQ(d.codim, stratum_dims(t, ell).stratum - stratum_dims(d.type, ell).stratum);
}

TEST(Poset, SmallExamples)
{
    auto p22 = stratification_poset(2, 2);
    EXPECT_EQ(p22.nodes.size(), 3u);
    EXPECT_EQ(p22.flagged_count(), 1u);
    EXPECT_TRUE(p22.codimension_rule_holds());
    EXPECT_EQ(stratification_poset(2, 3).flagged_count(), 0u);

    // n = 3, l = 2: splitting the 2 x 2 block of 2/1 1/1 drops the dimension from 7 to 6
    auto p32 = stratification_poset(3, 2);
    EXPECT_EQ(p32.nodes.size(), 5u);
    EXPECT_EQ(p32.flagged_count(), 1u);
    EXPECT_TRUE(p32.codimension_rule_holds());
    for (const auto& e : p32.edges)
        if (e.flagged) {
            EXPECT_EQ(p32.nodes[e.upper], T({{2, 1}, {1, 1}}));
            EXPECT_EQ(p32.nodes[e.lower], T({{1, 1}, {1, 1}, {1, 1}}));
        }
}

TEST(Poset, OrderAxiomsAndMonotonicity)
{
    for (unsigned n = 1; n <= 6; ++n)
        for (unsigned ell = 2; ell <= 4; ++ell) {
            auto p = stratification_poset(n, ell);
            const std::size_t N = p.nodes.size();
            for (std::size_t i = 0; i < N; ++i) {
                EXPECT_TRUE(p.leq[i][i]);
                for (std::size_t j = 0; j < N; ++j) {
                    if (i != j && p.leq[i][j]) {
                        EXPECT_FALSE(p.leq[j][i]) << p.nodes[i].label() << " / " << p.nodes[j].label();
                        EXPECT_LT(p.dims[i].stratum, p.dims[j].stratum);
                    }
                    for (std::size_t k = 0; k < N; ++k)
                        if (p.leq[i][j] && p.leq[j][k]) {
                            EXPECT_TRUE(p.leq[i][k]);
                        }
                }
            }
        }
}

TEST(Poset, ExtremeTypes)
{
    for (unsigned n = 1; n <= 6; ++n)
        for (unsigned ell = 2; ell <= 4; ++ell) {
            auto p = stratification_poset(n, ell);
            for (std::size_t i = 0; i < p.nodes.size(); ++i) {
                bool is_max = true, is_min = true;
                for (std::size_t j = 0; j < p.nodes.size(); ++j) {
                    is_max = is_max && p.leq[j][i];
                    is_min = is_min && p.leq[i][j];
                }
                EXPECT_EQ(is_max, p.nodes[i] == T({{n, 1}}));
                EXPECT_EQ(is_min, p.nodes[i] == T({{1, n}}));
                if (is_max) {
                    EXPECT_EQ(p.dims[i].stratum, static_cast<long>((ell - 1) * n * n + 1));
                }
                if (is_min) {
                    EXPECT_EQ(p.dims[i].stratum, static_cast<long>(ell));
                }
            }
        }
}

TEST(Poset, CoveringsAreExactlyTheMoves)
{
    for (unsigned n = 1; n <= 5; ++n) {
        auto p = stratification_poset(n, 2);
        std::set<std::pair<std::string, std::string>> covers, moves;
        for (const auto& e : p.edges)
            covers.emplace(p.nodes[e.upper].label(), p.nodes[e.lower].label());
        for (const auto& t : p.nodes)
            for (const auto& d : maximal_degenerations(t, 2))
                moves.emplace(t.label(), d.type.label());
        EXPECT_EQ(covers, moves) << "n=" << n;
    }
}

TEST(Poset, CodimensionOneOnlyInTheTwoByTwoException)
{
    for (unsigned n = 1; n <= 6; ++n)
        for (unsigned ell = 2; ell <= 4; ++ell) {
            auto p = stratification_poset(n, ell);
            EXPECT_TRUE(p.codimension_rule_holds()) << "n=" << n << " l=" << ell;
            for (const auto& e : p.edges) {
                EXPECT_GE(e.codim, 1);
                if (ell > 2) {
                    EXPECT_GE(e.codim, 2);
                }
            }
            if (ell == 2 && n >= 2) {
                EXPECT_GT(p.flagged_count(), 0u);
            }
        }
}

TEST(Poset, DotOutput)
{
    auto dot = to_dot(stratification_poset(2, 2));
    EXPECT_EQ(dot.rfind("digraph strata {", 0), 0u);
    EXPECT_NE(dot.find("2/1\\ndim 5"), std::string::npos);
    EXPECT_NE(dot.find("1/1 1/1\\ndim 4"), std::string::npos);
    EXPECT_NE(dot.find("[label=\"1\", color=red"), std::string::npos);
    EXPECT_EQ(std::count(dot.begin(), dot.end(), '>'), 2);
}
