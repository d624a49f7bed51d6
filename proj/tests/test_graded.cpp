#include "ndepth/error.hpp"
#include "ndepth/graded.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ndepth;

TEST(Shift, DegreeConvention)
{
	GradedSpace v({{"x", 0}, {"y", 3}});
	auto s1 = shift(v, 1);
	EXPECT_EQ(s1.degree(0), -1);
	EXPECT_EQ(s1.degree(1), 2);
	EXPECT_EQ(shift(v, 0).degree(1), 3);
	EXPECT_EQ(shift(shift(v, 1), 1).materialize(), shift(v, 2).materialize());
	EXPECT_EQ(s1.materialize().name(1), "y");
}

TEST(Koszul, Signs)
{
	std::vector<int> odd{1}, evens{2, 0, 4};
	EXPECT_EQ(koszul_sign(odd, 1), -1);
	EXPECT_EQ(koszul_sign(evens, 1), 1);
	EXPECT_EQ(koszul_sign(evens, 7), 1);
	// degree one operator inserted after a_1, a_2 of degrees -1, 2 on A[1]
	std::vector<int> prefix{-1, 2};
	EXPECT_EQ(koszul_sign(prefix, 1), -1);
}

TEST(Koszul, MultiplicativeOverConcatenation)
{
	std::mt19937 rng(3);
	std::uniform_int_distribution<int> d(-4, 4);
	for (int i = 0; i < 100; ++i)
	{
		std::vector<int> a(rng() % 4), b(rng() % 4);
		for (auto &x : a)
			x = d(rng);
		for (auto &x : b)
			x = d(rng);
		std::vector<int> ab = a;
		ab.insert(ab.end(), b.begin(), b.end());
		int moving = d(rng);
		EXPECT_EQ(koszul_sign(ab, moving), koszul_sign(a, moving) * koszul_sign(b, moving));
	}
}

TEST(Superdimension, Basics)
{
	EXPECT_EQ(superdimension(GradedSpace({{"a", 0}, {"b", 2}, {"c", 1}})), 1);
	EXPECT_EQ(superdimension(GradedSpace()), 0);
}

TEST(Superdimension, AdditiveAndMultiplicative)
{
	GradedSpace a({{"a0", 0}, {"a1", 1}, {"a2", 1}});
	GradedSpace b({{"b0", -1}, {"b1", 4}, {"b2", 2}, {"b3", 3}});
	EXPECT_EQ(superdimension(direct_sum(a, b)), superdimension(a) + superdimension(b));
	EXPECT_EQ(superdimension(tensor_product(a, b)), superdimension(a) * superdimension(b));
}

TEST(GradedSpace, RejectsDuplicateNames)
{
	EXPECT_THROW(GradedSpace({{"a", 0}, {"a", 1}}), InputError);
}

TEST(GradedMultiMap, RejectsDegreeInhomogeneousCoefficients)
{
	GradedSpace v({{"u", 0}, {"v", 1}, {"w", 2}});
	GradedMultiMap d(v, 1, v, 1);
	d.add({"u"}, "v", 1);
	EXPECT_THROW(d.add({"u"}, "w", 1), InputError);
	GradedMultiMap m(v, 2, v, 0);
	m.add({"u", "v"}, "v", Scalar(1, 3));
	EXPECT_THROW(m.add({"v", "v"}, "v", 1), InputError);
	EXPECT_THROW(m.add({"v", "x"}, "v", 1), InputError);
	// zero coefficients are never stored and never checked
	m.add({"v", "v"}, "u", 0);
	EXPECT_EQ(m.entries().size(), 1u);
}

TEST(GradedMultiMap, MatrixLayoutAndMultilinearApply)
{
	GradedSpace v({{"x", 0}, {"y", 0}});
	GradedMultiMap m(v, 2, v, 0);
	m.add({"x", "y"}, "y", 2);
	m.add({"y", "x"}, "x", 5);
	SparseMatrix mat = m.matrix();
	EXPECT_EQ(mat.rows(), 2u);
	EXPECT_EQ(mat.cols(), 4u);
	EXPECT_EQ(mat.get(1, m.column_index({0, 1})), Scalar(2));
	EXPECT_EQ(GradedMultiMap::from_matrix(v, 2, v, 0, mat), m);
	// (x + y) (x) (3y) = 3 xy + 3 yy -> 6y
	SparseVector lhs{{0, Scalar(1)}, {1, Scalar(1)}}, rhs{{1, Scalar(3)}};
	EXPECT_EQ(m.apply(std::vector<SparseVector>{lhs, rhs}), (SparseVector{{1, Scalar(6)}}));
}

TEST(ShiftedMaps, ProductPicksUpDesuspensionSign)
{
	GradedSpace v({{"e", 1}, {"one", 0}});
	GradedMultiMap m(v, 2, v, 0);
	m.add({"e", "one"}, "e", 1);
	m.add({"one", "e"}, "e", 1);
	m.add({"one", "one"}, "one", 1);
	GradedMultiMap ms = to_shifted(m);
	EXPECT_EQ(ms.degree(), 1);
	EXPECT_EQ(ms.domain().degree(0), 0);
	EXPECT_EQ(ms.domain().degree(1), -1);
	// m_s(s a, s b) = (-1)^{|a|-1} s(ab)
	EXPECT_EQ(ms.apply(Tuple{0, 1}), (SparseVector{{0, Scalar(1)}}));
	EXPECT_EQ(ms.apply(Tuple{1, 0}), (SparseVector{{0, Scalar(-1)}}));
	EXPECT_EQ(ms.apply(Tuple{1, 1}), (SparseVector{{1, Scalar(-1)}}));
	EXPECT_EQ(to_unshifted(ms, v, v), m);
}

TEST(ShiftedMaps, DifferentialKeepsItsSign)
{
	GradedSpace v({{"u", 0}, {"v", 1}});
	GradedMultiMap d(v, 1, v, 1);
	d.add({"u"}, "v", 1);
	GradedMultiMap ds = to_shifted(d);
	EXPECT_EQ(ds.degree(), 1);
	EXPECT_EQ(ds.apply(Tuple{0}), (SparseVector{{1, Scalar(1)}}));
}
