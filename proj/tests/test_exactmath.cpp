#include "ndepth/error.hpp"
#include "ndepth/exactmath.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace ndepth;

namespace {

SparseMatrix random_matrix(std::mt19937 &rng, std::size_t rows, std::size_t cols, int density_percent)
{
	std::uniform_int_distribution<int> pct(0, 99), val(-3, 3);
	SparseMatrix m(rows, cols);
	for (std::size_t r = 0; r < rows; ++r)
		for (std::size_t c = 0; c < cols; ++c)
			if (pct(rng) < density_percent)
				m.set(r, c, Scalar(val(rng), 1 + std::abs(val(rng))));
	return m;
}

} // namespace

TEST(Scalar, ParsesExactRationals)
{
	EXPECT_EQ(parse_scalar("1/3"), Scalar(1, 3));
	EXPECT_EQ(parse_scalar("-4/6"), Scalar(-2, 3));
	EXPECT_EQ(parse_scalar("7"), Scalar(7));
	EXPECT_EQ(to_string(parse_scalar("10/4")), "5/2");
	EXPECT_THROW(parse_scalar("0.5"), InputError);
	EXPECT_THROW(parse_scalar("1/0"), InputError);
	EXPECT_THROW(parse_scalar("1/-2"), InputError);
	EXPECT_THROW(parse_scalar(""), InputError);
}

TEST(Scalar, ArithmeticRoundTrips)
{
	std::mt19937 rng(7);
	std::uniform_int_distribution<int> d(-50, 50), pos(1, 50);
	for (int i = 0; i < 200; ++i)
	{
		Scalar a(d(rng), pos(rng)), c(d(rng), pos(rng));
		a.canonicalize();
		c.canonicalize();
		EXPECT_EQ((a + c) - c, a);
	}
}

TEST(RankKernel, Identity)
{
	auto rk = rank_kernel(SparseMatrix::identity(2));
	EXPECT_EQ(rk.rank, 2u);
	EXPECT_TRUE(rk.kernel.empty());
}

TEST(RankKernel, RowVector)
{
	SparseMatrix m(1, 2);
	m.set(0, 0, 1);
	m.set(0, 1, -1);
	auto rk = rank_kernel(m);
	EXPECT_EQ(rk.rank, 1u);
	ASSERT_EQ(rk.kernel.size(), 1u);
	SparseVector expected{{0, Scalar(1)}, {1, Scalar(1)}};
	EXPECT_EQ(rk.kernel[0], expected);
}

TEST(RankKernel, EmptyMatrix)
{
	auto rk = rank_kernel(SparseMatrix(0, 3));
	EXPECT_EQ(rk.rank, 0u);
	EXPECT_EQ(rk.kernel.size(), 3u);
	EXPECT_EQ(rank_kernel(SparseMatrix(4, 0)).rank, 0u);
}

TEST(RankKernel, RandomMatricesSatisfyRankNullity)
{
	std::mt19937 rng(2024);
	for (int trial = 0; trial < 60; ++trial)
	{
		std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
		SparseMatrix m = random_matrix(rng, rows, cols, 40);
		auto rk = rank_kernel(m);
		EXPECT_EQ(rk.rank + rk.kernel.size(), cols);
		for (const auto &v : rk.kernel)
			EXPECT_TRUE(m.apply(v).empty());
		if (!rk.kernel.empty())
		{
			SparseMatrix k = SparseMatrix::from_columns(cols, rk.kernel);
			EXPECT_EQ(rank(k), rk.kernel.size()) << "kernel vectors must be independent";
		}
	}
}

TEST(RankKernel, InvariantUnderRowPermutation)
{
	std::mt19937 rng(99);
	for (int trial = 0; trial < 40; ++trial)
	{
		std::size_t rows = 2 + rng() % 6, cols = 2 + rng() % 6;
		SparseMatrix m = random_matrix(rng, rows, cols, 50);
		std::vector<std::size_t> perm(rows), all_cols(cols);
		std::iota(perm.begin(), perm.end(), 0);
		std::iota(all_cols.begin(), all_cols.end(), 0);
		std::shuffle(perm.begin(), perm.end(), rng);
		EXPECT_EQ(rank(m), rank(m.block(perm, all_cols)));
	}
}

TEST(RankKernel, Deterministic)
{
	std::mt19937 rng(5);
	SparseMatrix m = random_matrix(rng, 6, 9, 30);
	auto a = rank_kernel(m), b = rank_kernel(m);
	EXPECT_EQ(a.kernel, b.kernel);
}

TEST(Subquotient, SpecExamples)
{
	EXPECT_EQ(subquotient_dim(SparseMatrix(3, 3), SparseMatrix::identity(3)), 0u);
	EXPECT_EQ(subquotient_dim(SparseMatrix::identity(3), SparseMatrix(3, 3)), 0u);

	SparseMatrix a(1, 2);
	a.set(0, 0, 1);
	a.set(0, 1, -1);
	SparseMatrix b(2, 1);
	b.set(0, 0, 1);
	b.set(1, 0, 1);
	EXPECT_EQ(subquotient_dim(a, b), 0u);
}

TEST(Subquotient, RejectsNonComposableImage)
{
	EXPECT_THROW(subquotient_dim(SparseMatrix::identity(2), SparseMatrix::identity(2)), PreconditionError);
}

TEST(SparseMatrix, NoStoredZeros)
{
	SparseMatrix m(2, 2);
	m.add(0, 0, 3);
	m.add(0, 0, -3);
	EXPECT_EQ(m.nonzeros(), 0u);
	EXPECT_TRUE(m.is_zero());
	m.set(1, 1, 2);
	EXPECT_EQ((m - m).nonzeros(), 0u);
	EXPECT_EQ(m.power(3).get(1, 1), Scalar(8));
}

TEST(SparseMatrix, ColumnSpanMembership)
{
	SparseMatrix m(3, 1);
	m.set(0, 0, 1);
	m.set(2, 0, 2);
	EXPECT_TRUE(in_column_span(m, SparseVector{{0, Scalar(1, 2)}, {2, Scalar(1)}}));
	EXPECT_FALSE(in_column_span(m, SparseVector{{1, Scalar(1)}}));
}

TEST(EchelonBasis, RankIndependentOfInsertionOrder)
{
	std::mt19937 rng(7);
	std::vector<SparseVector> vs;
	for (int i = 0; i < 12; ++i)
	{
		SparseVector v;
		for (std::size_t j = 0; j < 8; ++j)
			if (rng() % 3 == 0)
				add_entry(v, j, Scalar(static_cast<long>(rng() % 5) - 2));
		vs.push_back(v);
	}
	vs.push_back(vs[0]);
	EchelonBasis forward;
	for (const auto &v : vs)
		forward.insert(v);
	std::reverse(vs.begin(), vs.end());
	EchelonBasis backward;
	for (const auto &v : vs)
		backward.insert(v);
	EXPECT_EQ(forward.size(), backward.size());
	EXPECT_EQ(forward.size(), rank(SparseMatrix::from_columns(8, vs)));
	for (const auto &v : vs)
		EXPECT_TRUE(backward.contains(v));
	EXPECT_FALSE(forward.insert(vs[3]));
}
