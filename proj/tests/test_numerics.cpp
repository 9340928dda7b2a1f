#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support.hpp"

using namespace barypoly;
using testsupport::rv;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected barypoly::Error";
    return ErrorCode::InvalidArgument;
}

RationalMatrix square_system()
{
    return RationalMatrix{{0, 1, 1, 0}, {0, 0, 1, 1}, {1, 1, 1, 1}};
}

bool proportional(const RationalVector& a, const RationalVector& b)
{
    // a = s b for some nonzero s
    std::size_t k = 0;
    while (k < b.size() && b[k].is_zero())
        ++k;
    if (k == b.size() || a[k].is_zero())
        return false;
    Rational s = a[k] / b[k];
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != s * b[i])
            return false;
    return true;
}

}   // namespace

TEST(Rational, ParsesFractionsDecimalsAndExponents)
{
    EXPECT_EQ(parse_rational("3/7"), Rational(3, 7));
    EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
    EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
    EXPECT_EQ(parse_rational("-2.5e-3"), Rational(-1, 400));
    EXPECT_EQ(parse_rational("1E2"), Rational(100));
    EXPECT_EQ(parse_rational(" 42 "), Rational(42));
}

TEST(Rational, RejectsGarbage)
{
    for (const char* bad : {"", "abc", "1/0", "1//2", "1.2.3", "--1", "1/2/3", "e5"})
        EXPECT_EQ(code_of([&] { parse_rational(bad); }), ErrorCode::ParseError) << bad;
}

TEST(Rational, StaysCanonical)
{
    Rational x = parse_rational("10/4");
    EXPECT_EQ(boost::multiprecision::numerator(x), 5);
    EXPECT_EQ(boost::multiprecision::denominator(x), 2);
    Rational y = x - Rational(9, 2);
    EXPECT_EQ(boost::multiprecision::denominator(y), 1);
    EXPECT_EQ(to_string(y), "-2");
    EXPECT_EQ(to_string(Rational(-1, 3)), "-1/3");
}

TEST(Rational, DoubleConversionIsExact)
{
    EXPECT_EQ(from_double(0.125), Rational(1, 8));
    EXPECT_EQ(from_double(1e-4) * 10000 == 1, false);   // 1e-4 has no finite binary form
    EXPECT_EQ(to_double(from_double(1e-4)), 1e-4);
}

TEST(SolveLinear, Identity)
{
    EXPECT_EQ(solve_linear(RationalMatrix::identity(2), rv({"3", "5"})), rv({"3", "5"}));
}

TEST(SolveLinear, HandEliminated)
{
    RationalMatrix a{{1, 1}, {1, -1}};
    EXPECT_EQ(solve_linear(a, rv({"1", "0"})), rv({"1/2", "1/2"}));
}

TEST(SolveLinear, SingularRows)
{
    RationalMatrix a{{1, 1}, {2, 2}};
    EXPECT_EQ(code_of([&] { solve_linear(a, rv({"1", "1"})); }), ErrorCode::SingularMatrix);
}

TEST(SolveLinear, ShapeErrors)
{
    EXPECT_EQ(code_of([] { solve_linear(RationalMatrix(2, 3), RationalVector(2)); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([] { solve_linear(RationalMatrix::identity(2), RationalVector(3)); }),
              ErrorCode::DimensionMismatch);
}

TEST(SolveLinear, RoundTripOnRandomMatrices)
{
    std::mt19937_64 rng(7);
    int solved = 0;
    while (solved < 100) {
        std::size_t n = 1 + rng() % 8;
        RationalMatrix a = testsupport::random_matrix(rng, n, n);
        if (testsupport::det_cofactor(a).is_zero())
            continue;
        RationalMatrix bm = testsupport::random_matrix(rng, n, 1);
        RationalVector b = bm.col(0);
        RationalVector x = solve_linear(a, b);
        EXPECT_EQ(a * x, b);
        if (n <= 4) {
            EXPECT_EQ(x, testsupport::cramer(a, b));
        }
        ++solved;
    }
}

TEST(Inverse, MatchesCramer)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        RationalMatrix a = testsupport::random_matrix(rng, 3, 3);
        if (testsupport::det_cofactor(a).is_zero())
            continue;
        EXPECT_EQ(a * inverse(a), RationalMatrix::identity(3));
    }
}

TEST(Nullspace, UnitSquareSystem)
{
    RationalMatrix n = nullspace_basis(square_system());
    ASSERT_EQ(n.rows(), 4u);
    ASSERT_EQ(n.cols(), 1u);
    EXPECT_TRUE(proportional(n.col(0), rv({"1", "-1", "1", "-1"})));
}

TEST(Nullspace, TrivialKernel)
{
    RationalMatrix n = nullspace_basis(RationalMatrix::identity(2));
    EXPECT_EQ(n.rows(), 2u);
    EXPECT_EQ(n.cols(), 0u);
}

TEST(Nullspace, SingleRow)
{
    RationalMatrix n = nullspace_basis(RationalMatrix{{1, 1}});
    ASSERT_EQ(n.cols(), 1u);
    EXPECT_TRUE(proportional(n.col(0), rv({"1", "-1"})));
}

TEST(Nullspace, RandomMatricesAreAnnihilatedWithFullRank)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 7;
        RationalMatrix a = testsupport::random_matrix(rng, rows, cols);
        if (trial % 3 == 0 && rows > 1)   // force a dependent row
            for (std::size_t c = 0; c < cols; ++c)
                a(rows - 1, c) = a(0, c) * 2;
        RationalMatrix n = nullspace_basis(a);
        EXPECT_EQ(n.cols(), cols - rank(a));
        EXPECT_EQ(rank(n), n.cols());
        RationalMatrix zero(rows, n.cols());
        EXPECT_EQ(a * n, zero);
    }
}

TEST(Rank, Examples)
{
    EXPECT_EQ(rank(RationalMatrix::identity(3)), 3u);
    EXPECT_EQ(rank(square_system()), 3u);
    EXPECT_EQ(rank(RationalMatrix(2, 2)), 0u);
}

TEST(Rank, AgreesWithDeterminant)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        RationalMatrix a = testsupport::random_matrix(rng, 4, 4);
        if (trial % 2)
            for (std::size_t c = 0; c < 4; ++c)
                a(3, c) = a(0, c) - a(1, c);
        EXPECT_EQ(rank(a) == 4, !testsupport::det_cofactor(a).is_zero());
    }
}

TEST(AffineDim, Examples)
{
    std::vector<RationalVector> one{rv({"1", "2"})};
    EXPECT_EQ(affine_dim(one), 0u);
    std::vector<RationalVector> two{rv({"0", "0"}), rv({"1", "1"})};
    EXPECT_EQ(affine_dim(two), 1u);
    std::vector<RationalVector> sq{rv({"0", "0"}), rv({"1", "0"}), rv({"1", "1"}), rv({"0", "1"})};
    EXPECT_EQ(affine_dim(sq), 2u);
}

TEST(AffineDim, EmptyInput)
{
    std::vector<RationalVector> none;
    EXPECT_EQ(code_of([&] { affine_dim(none); }), ErrorCode::EmptyInput);
}

TEST(AffineDim, InvariantUnderPermutationAndHullPoints)
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t count = 1 + rng() % 5, len = 1 + rng() % 5;
        RationalMatrix m = testsupport::random_matrix(rng, count, len);
        std::vector<RationalVector> pts;
        for (std::size_t k = 0; k < count; ++k)
            pts.push_back(m.row(k));
        std::size_t base = affine_dim(pts);

        auto shuffled = pts;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        EXPECT_EQ(affine_dim(shuffled), base);

        // an affine combination of existing points stays in the hull
        Rational w = Rational(static_cast<long>(rng() % 7), 3);
        auto extended = pts;
        extended.push_back(w * pts.front() + (1 - w) * pts.back());
        EXPECT_EQ(affine_dim(extended), base);
    }
}
