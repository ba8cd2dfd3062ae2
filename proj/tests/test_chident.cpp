#include "tracealg/chident.hpp"
#include "tracealg/freetrace_io.hpp"

#include <gtest/gtest.h>

using namespace tracealg;

namespace {

TracePoly x(Letter i) { return TracePoly::variable(i); }
TracePoly tr(const TracePoly& p) { return formal_trace(p); }

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

} // namespace

TEST(Newton, ElementaryFromPowerSums)
{
    EXPECT_EQ(elementary_from_powersums(1), psi(1));
    EXPECT_EQ(elementary_from_powersums(2), (psi(1) * psi(1) - psi(2)) * Rational(1, 2));
    EXPECT_EQ(elementary_from_powersums(3),
              (psi(1).pow(3) - psi(1) * psi(2) * Rational(3) + psi(3) * Rational(2)) * Rational(1, 6));
    EXPECT_THROW(elementary_from_powersums(0), std::invalid_argument);
}

TEST(Newton, PowerSumsRecoveredFromElementary)
{
    // psi_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i psi_{k-i} + (-1)^{k-1} k e_k
    auto e = elementary_table(8);
    for (unsigned k = 1; k <= 8; ++k) {
        SymFnPoly s = e[k] * Rational(k % 2 == 1 ? static_cast<long>(k) : -static_cast<long>(k));
        for (unsigned i = 1; i < k; ++i)
            s += e[i] * psi(k - i) * Rational(i % 2 == 1 ? 1 : -1);
        EXPECT_EQ(s, psi(k)) << "k=" << k;
    }
}

TEST(Newton, SigmaExamples)
{
    EXPECT_EQ(sigma(1), tr(x(1)));
    EXPECT_EQ(sigma(2), (tr(x(1)) * tr(x(1)) - tr(x(1) * x(1))) * Rational(1, 2));
    EXPECT_EQ(sigma(3), tr(x(1)).pow(3) * Rational(1, 6) - tr(x(1) * x(1)) * tr(x(1)) * Rational(1, 2) +
                            tr(x(1).pow(3)) * Rational(1, 3));
}

TEST(CayleyHamilton, LowDegreeForms)
{
    EXPECT_EQ(ch_poly(1), x(1) - tr(x(1)));
    EXPECT_EQ(ch_poly(2), x(1) * x(1) - tr(x(1)) * x(1) + sigma(2));
    EXPECT_EQ(render(ch_poly(2)), "x^2 - tr(x)*x + 1/2*tr(x)^2 - 1/2*tr(x^2)");
    EXPECT_EQ(ch_poly(3).size(), 7u);
    EXPECT_THROW(ch_poly(0), std::invalid_argument);
}

TEST(CayleyHamilton, ExpandedCubicForm)
{
    auto expanded = parse_trace_poly(
        "x^3 - tr(x)*x^2 + 1/2*(tr(x)^2 - tr(x^2))*x - 1/3*tr(x^3) - 1/6*tr(x)^3 + 1/2*tr(x^2)*tr(x)");
    EXPECT_EQ(ch_poly(3), expanded);
}

TEST(Permutations, CyclesAndSigns)
{
    auto id = PermCycles::from_one_line({1, 2});
    EXPECT_EQ(id.cycles().size(), 2u);
    EXPECT_EQ(id.sign(), 1);
    auto swap = PermCycles::from_cycles(2, {{1, 2}});
    EXPECT_EQ(swap.sign(), -1);
    EXPECT_THROW(PermCycles::from_one_line({1, 1}), std::invalid_argument);
    EXPECT_THROW(PermCycles::from_cycles(3, {{1, 4}}), std::invalid_argument);
    int count = 0, sum = 0;
    for_each_permutation(4, [&](const PermCycles& p) {
        ++count;
        sum += p.sign();
    });
    EXPECT_EQ(count, 24);
    EXPECT_EQ(sum, 0);
}

TEST(MultilinearTraces, CycleProducts)
{
    EXPECT_EQ(t_sigma(PermCycles::from_one_line({1, 2})), tr(x(1)) * tr(x(2)));
    EXPECT_EQ(t_sigma(PermCycles::from_cycles(2, {{1, 2}})), tr(x(1) * x(2)));
    EXPECT_EQ(t_sigma(PermCycles::from_cycles(3, {{1, 2, 3}})), tr(x(1) * x(2) * x(3)));
    EXPECT_EQ(t_multilinear(1), tr(x(1)));
    EXPECT_EQ(t_multilinear(2), tr(x(1)) * tr(x(2)) - tr(x(1) * x(2)));
    EXPECT_EQ(restitute(t_multilinear(2)), sigma(2) * Rational(2));
}

TEST(MultilinearTraces, SymmetricUnderRelabeling)
{
    for (int k = 2; k <= 4; ++k) {
        auto t = t_multilinear(k);
        for_each_permutation(static_cast<unsigned>(k), [&](const PermCycles& p) {
            std::vector<unsigned> image(static_cast<std::size_t>(k));
            for (const auto& c : p.cycles())
                for (std::size_t i = 0; i < c.size(); ++i)
                    image[c[i] - 1] = c[(i + 1) % c.size()];
            std::map<Letter, TracePoly> relabel;
            for (int i = 1; i <= k; ++i)
                relabel.emplace(i, x(image[static_cast<std::size_t>(i - 1)]));
            EXPECT_EQ(substitute(t, relabel), t);
        });
    }
}

TEST(MultilinearCayleyHamilton, SmallCases)
{
    EXPECT_EQ(ch_multilinear(1), ch_poly(1));
    auto expected = x(1) * x(2) + x(2) * x(1) - tr(x(1)) * x(2) - tr(x(2)) * x(1) - tr(x(1) * x(2)) +
                    tr(x(1)) * tr(x(2));
    EXPECT_EQ(ch_multilinear(2), expected);
}

TEST(MultilinearCayleyHamilton, PolarizedSquareByExpansion)
{
    auto ch2 = ch_poly(2);
    auto expanded = substitute(ch2, {{1, x(1) + x(2)}}) - substitute(ch2, {{1, x(1)}}) -
                    substitute(ch2, {{1, x(2)}});
    EXPECT_EQ(expanded, ch_multilinear(2));
}

TEST(MultilinearCayleyHamilton, PolarizationAndRestitution)
{
    for (int n = 1; n <= 4; ++n) {
        auto m = ch_multilinear(n);
        EXPECT_EQ(polarize(ch_poly(n)), m) << "n=" << n;
        EXPECT_EQ(restitute(m), ch_poly(n) * Rational(factorial(n))) << "n=" << n;
    }
}

TEST(MultilinearCayleyHamilton, LinearInEachArgument)
{
    for (int n = 1; n <= 4; ++n) {
        auto m = ch_multilinear(n);
        for (int i = 1; i <= n; ++i) {
            std::map<Letter, TracePoly> scale;
            for (int j = 1; j <= n; ++j)
                scale.emplace(j, j == i ? x(j) * Rational(3, 2) : x(j));
            EXPECT_EQ(substitute(m, scale), m * Rational(3, 2));
        }
    }
}

TEST(FormalIdentities, TraceOfCayleyHamiltonTimesVariable)
{
    for (int n = 1; n <= 4; ++n) {
        auto lhs = tr(ch_multilinear(n) * x(static_cast<Letter>(n + 1)));
        auto rhs = t_multilinear(n + 1) * Rational(n % 2 == 0 ? 1 : -1);
        EXPECT_EQ(lhs, rhs) << "n=" << n;
    }
}

TEST(FormalIdentities, RecursionForMultilinearTraces)
{
    for (int n = 1; n <= 4; ++n) {
        auto tn = t_multilinear(n);
        const Letter last = static_cast<Letter>(n + 1);
        TracePoly rhs = tn * tr(x(last));
        for (int i = 1; i <= n; ++i)
            rhs -= substitute(tn, [&] {
                std::map<Letter, TracePoly> m;
                for (int j = 1; j <= n; ++j)
                    m.emplace(j, j == i ? x(j) * x(last) : x(j));
                return m;
            }());
        EXPECT_EQ(t_multilinear(n + 1), rhs) << "n=" << n;
    }
}

TEST(Polarization, Examples)
{
    EXPECT_EQ(polarize(x(1) * x(1)), x(1) * x(2) + x(2) * x(1));
    EXPECT_EQ(polarize(sigma(2)), t_multilinear(2));
    EXPECT_THROW(polarize(x(1) * x(1) + x(1)), NotHomogeneous);
    EXPECT_THROW(polarize(x(1) * x(2)), std::invalid_argument);
}
