#include "ndepth/error.hpp"
#include "ndepth/trees.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

using namespace ndepth;

namespace {

long binomial(long n, long k)
{
	long r = 1;
	for (long i = 1; i <= k; ++i)
		r = r * (n - k + i) / i;
	return r;
}

long catalan(long n) { return binomial(2 * n, n) / (n + 1); }

} // namespace

TEST(PlanarTree, ParseSerializeRoundTrip)
{
	for (const char *text : {"*", "u(*)", "b(*,*)", "b(u(*),b(*,*))", "m3(*,u(*),*)", "u(u(b(*,*)))"})
		EXPECT_EQ(PlanarTree::parse(text).serialize(), text);
	EXPECT_THROW(PlanarTree::parse("b(*)"), InputError);
	EXPECT_THROW(PlanarTree::parse("x"), InputError);
	EXPECT_THROW(PlanarTree::parse("u(*"), InputError);
}

TEST(PlanarTree, Statistics)
{
	auto t = PlanarTree::parse("b(u(*),m3(*,*,*))");
	EXPECT_EQ(t.leaf_count(), 4u);
	EXPECT_EQ(t.internal_count(), 3u);
	EXPECT_EQ(t.degree(), 0 + 1 - 1);
	auto profile = t.arity_profile();
	EXPECT_EQ(profile[1], 1u);
	EXPECT_EQ(profile[2], 1u);
	EXPECT_EQ(profile[3], 1u);
	EXPECT_EQ(PlanarTree::leaf().leaf_count(), 1u);
	EXPECT_EQ(PlanarTree::leaf().internal_count(), 0u);
}

TEST(Enumeration, SmallCounts)
{
	EXPECT_EQ(enumerate_ub(2, 2, 1).size(), 6u);
	EXPECT_EQ(enumerate_arity(2, 2).size(), 3u);
	EXPECT_EQ(enumerate_arity(2, 3).size(), 6u);
	EXPECT_TRUE(enumerate_ub(3, 0, 1).empty());
	EXPECT_EQ(enumerate_ub(1, 3, 0).size(), 1u);
}

TEST(Enumeration, BinaryTreesAreCatalan)
{
	for (std::size_t n = 1; n <= 8; ++n)
		EXPECT_EQ(enumerate_binary(n).size(), static_cast<std::size_t>(catalan(n - 1))) << "n=" << n;
}

TEST(Enumeration, UnaryBinaryMatchesStarsAndBars)
{
	// a binary tree with l leaves has 2l - 1 edges to carry the unary vertices
	for (std::size_t l = 1; l <= 5; ++l)
		for (std::size_t u = 0; u <= 3; ++u)
		{
			long edges = 2 * static_cast<long>(l) - 1;
			long expected = catalan(l - 1) * binomial(edges + u - 1, u);
			EXPECT_EQ(static_cast<long>(enumerate_ub(l, u, l - 1).size()), expected) << l << "," << u;
		}
}

TEST(Enumeration, ArityCountsMatchRecursion)
{
	// count planar trees as sequences: tree = leaf | vertex(nonempty forest)
	std::map<std::pair<int, int>, long> memo_f;
	std::function<long(int, int)> t, f;
	t = [&](int l, int n) -> long {
		if (l < 0 || n < 0)
			return 0;
		if (n == 0)
			return l == 1 ? 1 : 0;
		return f(l, n - 1);
	};
	f = [&](int l, int n) -> long {
		if (l <= 0 || n < 0)
			return 0;
		auto key = std::make_pair(l, n);
		if (auto it = memo_f.find(key); it != memo_f.end())
			return it->second;
		long total = t(l, n); // single tree
		for (int l1 = 1; l1 < l; ++l1)
			for (int n1 = 0; n1 <= n; ++n1)
				total += t(l1, n1) * f(l - l1, n - n1);
		return memo_f[key] = total;
	};
	for (int l = 1; l <= 4; ++l)
		for (int n = 0; n <= 4; ++n)
			EXPECT_EQ(static_cast<long>(enumerate_arity(l, n).size()), t(l, n)) << l << "," << n;
}

TEST(Enumeration, SortedAndDistinct)
{
	auto trees = enumerate_arity(3, 3);
	std::set<std::string> seen;
	std::string prev;
	for (const auto &tr : trees)
	{
		auto s = tr.serialize();
		EXPECT_TRUE(seen.insert(s).second);
		EXPECT_LT(prev, s);
		prev = s;
		EXPECT_EQ(tr.leaf_count(), 3u);
		EXPECT_EQ(tr.internal_count(), 3u);
	}
}

TEST(FiringWeight, ChainsAndCherries)
{
	EXPECT_EQ(firing_weight(PlanarTree::parse("u(u(u(*)))")), 1);
	EXPECT_EQ(firing_weight(PlanarTree::parse("b(b(*,*),*)")), 1);
	// two independent children of a root vertex fire in either order with opposite signs
	EXPECT_EQ(firing_weight(PlanarTree::parse("b(b(*,*),b(*,*))")), 0);
	EXPECT_EQ(firing_weight(PlanarTree::parse("b(u(*),u(*))")), 0);
}

TEST(FiringWeight, TwoChainsGiveGaussianBinomialAtMinusOne)
{
	// interleavings of chains of lengths p and q counted with sign are the
	// Gaussian binomial [p+q choose p] at q = -1
	auto chain = [](int len) {
		std::string s = "*";
		for (int i = 0; i < len; ++i)
			s = "u(" + s + ")";
		return s;
	};
	for (int p = 0; p <= 4; ++p)
		for (int q = 0; q <= 4; ++q)
		{
			long expected = (p % 2 == 1 && q % 2 == 1) ? 0 : binomial((p + q) / 2, p / 2);
			auto t = PlanarTree::parse("b(" + chain(p) + "," + chain(q) + ")");
			EXPECT_EQ(std::abs(firing_weight(t)), expected) << t.serialize();
		}
	EXPECT_EQ(firing_weight(PlanarTree::parse("m3(u(*),u(u(*)),*)")), 1);
}
