#include <gtest/gtest.h>

#include "credal/exactla.hpp"
#include "credal/events.hpp"
#include "random_models.hpp"

using namespace credal;
using credal::testing::Rng;

namespace {

Rat q(long p, long d = 1) { return Rat(Int(p), Int(d)); }

RatMatrix identity(std::size_t n)
{
    RatMatrix m(n, RatVector(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatMatrix random_matrix(Rng& r, std::size_t rows, std::size_t cols)
{
    RatMatrix m(rows, RatVector(cols));
    for (auto& row : m)
        for (auto& x : row) x = r.integer(0, 3) == 0 ? Rat(0) : r.rat(-5, 5, 4);
    return m;
}

} // namespace

TEST(Rational, TextFormIsCanonical)
{
    EXPECT_EQ(to_string(parse_rat("6/4")), "3/2");
    EXPECT_EQ(to_string(parse_rat("-10/5")), "-2");
    EXPECT_EQ(to_string(parse_rat("0/7")), "0");
    EXPECT_EQ(to_string(parse_rat("+3")), "3");
    EXPECT_EQ(to_string(parse_rat("-4/2")), "-2");
    EXPECT_EQ(parse_rat("12345678901234567890123/3"), Rat(Int("4115226300411522630041")));
}

TEST(Rational, RejectsMalformedText)
{
    for (const char* bad : {"", "1/0", "abc", "1.5", "1/", "/2", "1/-2", "--1", "1 /2"})
        EXPECT_THROW(parse_rat(bad), input_error) << bad;
}

TEST(Rational, DecimalRendering)
{
    EXPECT_EQ(to_decimal(q(1, 3)), "0.333333333333");
    EXPECT_EQ(to_decimal(q(10, 99)), "0.10101010101");
}

TEST(SolveSquare, Identity)
{
    auto x = solve_square(identity(3), {q(1), q(2), q(3)});
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, (RatVector{q(1), q(2), q(3)}));
}

TEST(SolveSquare, Symmetric2x2)
{
    auto x = solve_square({{q(1), q(1)}, {q(1), q(-1)}}, {q(1), q(0)});
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, (RatVector{q(1, 2), q(1, 2)}));
}

TEST(SolveSquare, SingularIsAbsent)
{
    EXPECT_FALSE(solve_square({{q(1), q(1)}, {q(2), q(2)}}, {q(1), q(2)}));
    EXPECT_FALSE(solve_square({{q(1), q(1)}, {q(2), q(2)}}, {q(1), q(5)}));
}

TEST(SolveSquare, DimensionMismatchIsInputError)
{
    EXPECT_THROW(solve_square({{q(1), q(1)}}, {q(1)}), input_error);
    EXPECT_THROW(solve_square(identity(2), {q(1)}), input_error);
    EXPECT_THROW(rank({{q(1), q(2)}, {q(1)}}), input_error);
}

TEST(Rank, Basics)
{
    EXPECT_EQ(rank(RatMatrix(3, RatVector(4, Rat(0)))), 0u);
    EXPECT_EQ(rank(identity(5)), 5u);
}

TEST(Rank, PairwiseUnionsWithConstantOnFourOutcomes)
{
    const std::size_t n = 4;
    RatMatrix m{indicator(n, 0b0011), indicator(n, 0b0110), indicator(n, 0b0101), ones(n)};
    EXPECT_EQ(rank(m), 4u);
    // 1_{x1,x2,x3} = (r1 + r2 + r3) / 2 is the dependent fourth indicator
    m.push_back(indicator(n, 0b0111));
    EXPECT_EQ(rank(m), 4u);
}

TEST(Nullspace, Identity) { EXPECT_TRUE(nullspace(identity(4)).empty()); }

TEST(Nullspace, SingleOnesRow)
{
    auto k = nullspace({ones(3)});
    ASSERT_EQ(k.size(), 2u);
    EXPECT_EQ(rank(k), 2u);
    for (const auto& v : k) EXPECT_EQ(dot(v, ones(3)), 0);
}

TEST(Nullspace, SingletonAndConstant)
{
    auto k = nullspace({indicator(3, 0b001), ones(3)});
    ASSERT_EQ(k.size(), 1u);
    EXPECT_TRUE(k[0] == (RatVector{q(0), q(1), q(-1)}) || k[0] == (RatVector{q(0), q(-1), q(1)}));
}

TEST(NonnegSpan, GeneratorItself)
{
    std::vector<RatVector> gens{indicator(3, 0b001), indicator(3, 0b011)};
    auto w = in_nonneg_span(gens, {}, gens[1]);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->alpha, (RatVector{q(0), q(1)}));
}

TEST(NonnegSpan, PairwiseUnionsContainTripleUnion)
{
    const std::size_t n = 4;
    std::vector<RatVector> gens{indicator(n, 0b0011), indicator(n, 0b0110), indicator(n, 0b0101)};
    auto w = in_nonneg_span(gens, {ones(n)}, indicator(n, 0b0111));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->alpha, (RatVector{q(1, 2), q(1, 2), q(1, 2)}));
    EXPECT_EQ(w->beta, (RatVector{q(0)}));
}

TEST(NonnegSpan, OtherSingletonIsOutside)
{
    EXPECT_FALSE(in_nonneg_span({indicator(3, 0b001)}, {ones(3)}, indicator(3, 0b010)));
    // 1_{x2} - 1_{x3} is not in span{1_{x1}, 1} at all; the feasibility kernel agrees
    EXPECT_EQ(rank({indicator(3, 0b001), ones(3), indicator(3, 0b010)}), 3u);
}

TEST(Simplex, SmallProblems)
{
    // min -x1 - x2 s.t. x1 + x2 + s = 4, x1 - x2 + t = 2
    auto sol = simplex_min({{q(1), q(1), q(1), q(0)}, {q(1), q(-1), q(0), q(1)}}, {q(4), q(2)},
                           {q(-1), q(-1), q(0), q(0)});
    ASSERT_EQ(sol.status, LpStatus::optimal);
    EXPECT_EQ(sol.value, -4);
    EXPECT_EQ(simplex_min({{q(1), q(1)}}, {q(-1)}, {q(0), q(0)}).status, LpStatus::infeasible);
    EXPECT_EQ(simplex_min({{q(1), q(-1)}}, {q(0)}, {q(-1), q(0)}).status, LpStatus::unbounded);
}

TEST(ExactlaProperties, SolveReproducesRhs)
{
    Rng r(11);
    int solved = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + r.index(5);
        auto m = random_matrix(r, n, n);
        RatVector b(n);
        for (auto& x : b) x = r.rat(-9, 9, 5);
        auto x = solve_square(m, b);
        EXPECT_EQ(x.has_value(), rank(m) == n);
        if (x) {
            EXPECT_EQ(multiply(m, *x), b);
            ++solved;
        }
    }
    EXPECT_GT(solved, 100);
}

TEST(ExactlaProperties, RankOfTranspose)
{
    Rng r(12);
    for (int trial = 0; trial < 200; ++trial) {
        auto m = random_matrix(r, 1 + r.index(5), 1 + r.index(5));
        EXPECT_EQ(rank(m), rank(transpose(m)));
    }
}

TEST(ExactlaProperties, NullspaceIsKernel)
{
    Rng r(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t rows = 1 + r.index(4), cols = 1 + r.index(5);
        auto m = random_matrix(r, rows, cols);
        auto k = nullspace(m);
        EXPECT_EQ(k.size() + rank(m), cols);
        for (const auto& v : k) EXPECT_TRUE(is_zero(multiply(m, v)));
        if (!k.empty()) {
            EXPECT_EQ(rank(k), k.size());
        }
    }
}

TEST(ExactlaProperties, SpanWitnessReconstructs)
{
    Rng r(14);
    int found = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + r.index(4);
        std::vector<RatVector> gens;
        const std::size_t k = 1 + r.index(4);
        for (std::size_t i = 0; i < k; ++i) gens.push_back(random_matrix(r, 1, n)[0]);
        const auto v = random_matrix(r, 1, n)[0];
        auto w = in_nonneg_span(gens, {ones(n)}, v);
        if (!w) continue;
        ++found;
        RatVector back = w->beta[0] * ones(n);
        for (std::size_t i = 0; i < k; ++i) {
            EXPECT_GE(w->alpha[i], 0);
            back = back + w->alpha[i] * gens[i];
        }
        EXPECT_EQ(back, v);
    }
    EXPECT_GT(found, 20);
}
