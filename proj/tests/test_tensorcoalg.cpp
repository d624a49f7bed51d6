#include "ndepth/error.hpp"
#include "ndepth/tensorcoalg.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ndepth;
using namespace ndepth::testing;

namespace {

using TensorSquare = std::map<std::pair<Word, Word>, Scalar>;

void add_to(TensorSquare &t, const Word &a, const Word &b, const Scalar &c)
{
	auto &slot = t[{a, b}];
	slot += c;
	if (slot == 0)
		t.erase({a, b});
}

// reduced deconcatenation of a vector of words
TensorSquare coproduct(const TruncatedCoalgebra &c, const SparseVector &v)
{
	TensorSquare out;
	for (const auto &[idx, coeff] : v)
	{
		Word w = c.word(idx);
		for (std::size_t i = 1; i < w.size(); ++i)
			add_to(out, Word(w.begin(), w.begin() + i), Word(w.begin() + i, w.end()), coeff);
	}
	return out;
}

} // namespace

TEST(TruncatedCoalgebra, LengthLexIndexing)
{
	GradedSpace v({{"a", 0}, {"b", 1}, {"c", 2}});
	TruncatedCoalgebra c(shift(v, 1), 3);
	EXPECT_EQ(c.dim(), 3u + 9u + 27u);
	EXPECT_EQ(c.offset(2), 3u);
	EXPECT_EQ(c.index({1, 2}), 3u + 5u);
	for (std::size_t i = 0; i < c.dim(); ++i)
		EXPECT_EQ(c.index(c.word(i)), i);
	EXPECT_EQ(c.degree({0, 2}), -1 + 1);
	TruncatedCoalgebra two(shift(v, 1), 5, CarrierMode::two_truncated);
	EXPECT_EQ(two.max_length(), 2u);
}

TEST(Coderivation, RejectsBadComponents)
{
	auto end = end_of_two_term_complex();
	TruncatedCoalgebra c(shift(end.space, 1), 3);
	EXPECT_THROW(Coderivation({{2, end.m}}, c), InputError);
	GradedSpace letters = c.letters();
	GradedMultiMap m3(letters, 3, letters, 1);
	TruncatedCoalgebra two(shift(end.space, 1), 3, CarrierMode::two_truncated);
	EXPECT_THROW(Coderivation({{3, m3}}, two), InputError);
	TruncatedCoalgebra short_carrier(shift(end.space, 1), 2);
	EXPECT_THROW(Coderivation({{3, m3}}, short_carrier), InputError);
}

TEST(Coderivation, SatisfiesCoLeibniz)
{
	std::mt19937 rng(11);
	GradedSpace a({{"x", 0}, {"y", 1}, {"z", -1}});
	TruncatedCoalgebra c(shift(a, 1), 4);
	std::map<std::size_t, GradedMultiMap> comps;
	for (std::size_t k = 1; k <= 3; ++k)
		comps.emplace(k, random_map(rng, c.letters(), k, 1));
	Coderivation delta(comps, c);
	for (std::size_t idx = 0; idx < c.dim(); ++idx)
	{
		Word w = c.word(idx);
		TensorSquare lhs = coproduct(c, delta.apply_word(w));
		TensorSquare rhs;
		for (std::size_t i = 1; i < w.size(); ++i)
		{
			Word left(w.begin(), w.begin() + i), right(w.begin() + i, w.end());
			for (const auto &[j, coeff] : delta.apply_word(left))
				add_to(rhs, c.word(j), right, coeff);
			int sign = koszul_sign(c.degree(left), 1);
			for (const auto &[j, coeff] : delta.apply_word(right))
				add_to(rhs, left, c.word(j), sign * coeff);
		}
		EXPECT_EQ(lhs, rhs) << "word index " << idx;
	}
}

TEST(StrictNilpotency, DgaGivesSquareZero)
{
	auto end = end_of_two_term_complex();
	TruncatedCoalgebra c(shift(end.space, 1), 4);
	Coderivation delta(shifted_family(end.d, end.m), c);
	EXPECT_TRUE(strict_nilpotency(delta, 2).holds);
	auto report = corestriction_identities(delta, 2, 4);
	EXPECT_TRUE(report.all_vanish());
	EXPECT_TRUE(report.routes_agree());
}

TEST(StrictNilpotency, BrokenLeibnizIsDetected)
{
	auto end = end_of_two_term_complex();
	GradedMultiMap d = end.d;
	d.add({"e01"}, "e00", 1); // now e01 -> 2 e00 + e11
	TruncatedCoalgebra c(shift(end.space, 1), 3);
	Coderivation delta(shifted_family(d, end.m), c);
	EXPECT_FALSE(strict_nilpotency(delta, 2).holds);
	auto report = corestriction_identities(delta, 2, 3);
	EXPECT_FALSE(report.all_vanish());
	EXPECT_TRUE(report.routes_agree());
	EXPECT_FALSE(report.per_length[1].vanishes);
}

TEST(StrictNilpotency, ThreeChainFailsStrictlyButCorestrictionVanishes)
{
	GradedMultiMap d = three_chain_differential();
	TruncatedCoalgebra c(shift(d.domain(), 1), 2);
	Coderivation delta({{1, to_shifted(d)}}, c);

	auto strict3 = strict_nilpotency(delta, 3);
	ASSERT_FALSE(strict3.holds);
	ASSERT_TRUE(strict3.first_failure.has_value());
	EXPECT_EQ(strict3.first_failure->from_len, 2u);
	EXPECT_EQ(strict3.first_failure->to_len, 2u);

	auto report = corestriction_identities(delta, 3, 2);
	EXPECT_TRUE(report.all_vanish());
	EXPECT_TRUE(report.routes_agree());

	auto strict2 = strict_nilpotency(delta, 2);
	ASSERT_FALSE(strict2.holds);
	EXPECT_EQ(strict2.first_failure->from_len, 1u);
	EXPECT_FALSE(strict_nilpotency(delta, 4).holds);
	EXPECT_TRUE(strict_nilpotency(delta, 5).holds);
}

TEST(Corestriction, TreeRouteMatchesMatrixRouteOnRandomFamilies)
{
	std::mt19937 rng(42);
	for (int trial = 0; trial < 6; ++trial)
	{
		GradedSpace a({{"p", 0}, {"q", 1}, {"r", 2}});
		TruncatedCoalgebra c(shift(a, 1), 4);
		std::map<std::size_t, GradedMultiMap> comps;
		for (std::size_t k = 1; k <= 3; ++k)
			if (rng() % 4 != 0)
				comps.emplace(k, random_map(rng, c.letters(), k, 1, 60));
		Coderivation delta(comps, c);
		for (unsigned N = 1; N <= 4; ++N)
		{
			auto report = corestriction_identities(delta, N, 4);
			for (const auto &e : report.per_length)
				EXPECT_TRUE(e.routes_agree) << "trial " << trial << " N=" << N << " l=" << e.leaves;
		}
	}
}

TEST(Corestriction, PowerComponentIsBlockOfMatrixPower)
{
	std::mt19937 rng(8);
	GradedSpace a({{"p", 0}, {"q", 1}});
	TruncatedCoalgebra c(shift(a, 1), 3);
	Coderivation delta({{1, random_map(rng, c.letters(), 1, 1)}, {2, random_map(rng, c.letters(), 2, 1)}}, c);
	SparseMatrix cube = delta.matrix().power(3);
	SparseMatrix block = power_component(delta, 3, 3, 1);
	EXPECT_EQ(block, cube.block(c.indices_of_length(1), c.indices_of_length(3)));
}
