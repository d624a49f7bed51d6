#include "ndepth/error.hpp"
#include "ndepth/maurercartan.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace ndepth;
using namespace ndepth::testing;

namespace {

Composition comp(std::vector<unsigned> parts) { return Composition{std::move(parts)}; }

// every path of length M from the empty composition, weights multiplied edge by edge
void enumerate_paths(unsigned steps_left, const Composition &s, long weight, std::map<Composition, long> &weights,
                     std::map<Composition, long> &counts)
{
	if (steps_left == 0)
	{
		weights[s] += weight;
		++counts[s];
		return;
	}
	Composition pushed{{0}};
	pushed.parts.insert(pushed.parts.end(), s.parts.begin(), s.parts.end());
	enumerate_paths(steps_left - 1, pushed, weight, weights, counts);
	long loop = (s.size() + s.length()) % 2 ? -1 : 1;
	enumerate_paths(steps_left - 1, s, weight * loop, weights, counts);
	unsigned before = 0;
	for (std::size_t i = 0; i < s.length(); ++i)
	{
		Composition raised = s;
		++raised.parts[i];
		long w = (before + i) % 2 ? -1 : 1;
		enumerate_paths(steps_left - 1, raised, weight * w, weights, counts);
		before += s.parts[i];
	}
}

AlgebraPresentation dual_numbers()
{
	AlgebraPresentation p;
	p.space = GradedSpace({{"one", 0}, {"eps", 0}});
	GradedMultiMap m(p.space, 2, p.space, 0);
	m.add({"one", "one"}, "one", 1);
	m.add({"one", "eps"}, "eps", 1);
	m.add({"eps", "one"}, "eps", 1);
	p.mult = m;
	p.diff = GradedMultiMap(p.space, 1, p.space, 1);
	p.declared_kind = StructureKind::ndga;
	p.declared_N = 2;
	return p;
}

Coderivation codifferential(const AlgebraPresentation &p, std::size_t L)
{
	return Coderivation(p.shifted_components(), TruncatedCoalgebra(shift(p.space, 1), L));
}

HMatrix first_order(const Coderivation &delta, const GradedMultiMap &f, unsigned p)
{
	HMatrix e = HMatrix::zero(delta.carrier().dim(), p);
	e.c[1] = lift_to_carrier({{2, to_shifted(f)}}, delta.carrier());
	return e;
}

} // namespace

TEST(Composition, Accessors)
{
	Composition s = comp({2, 0, 1});
	EXPECT_EQ(s.length(), 3u);
	EXPECT_EQ(s.size(), 3u);
	EXPECT_EQ(s.prefix_size(1), 0u);
	EXPECT_EQ(s.prefix_size(3), 2u);
	EXPECT_EQ(s.prefix_size(4), 3u);
	EXPECT_EQ(s.prefix(3), comp({2, 0}));
	EXPECT_EQ(s.suffix(1), comp({0, 1}));
	EXPECT_EQ(s.suffix(3), comp({}));
	EXPECT_EQ(s.to_string(), "(2,0,1)");
	EXPECT_EQ(comp({}).to_string(), "()");
}

TEST(McCoefficients, ClassicalLimit)
{
	MCTable t = mc_coefficients(2, 2);
	EXPECT_EQ(t.coefficient(comp({1})), 1);
	EXPECT_EQ(t.coefficient(comp({0, 0})), 1);
	EXPECT_EQ(t.coefficient(comp({0})), 0);
	ASSERT_EQ(t.assembled.size(), 1u);
	std::vector<std::pair<Composition, Scalar>> c0{{comp({0, 0}), 1}, {comp({1}), 1}};
	EXPECT_EQ(t.assembled.at(0), c0);
}

TEST(McCoefficients, LengthThree)
{
	MCTable t = mc_coefficients(2, 3);
	EXPECT_EQ(t.coefficient(comp({1})), 1);
	EXPECT_EQ(t.coefficient(comp({0, 1})), 0);
	EXPECT_EQ(t.coefficient(comp({1, 0})), 1);
	EXPECT_EQ(t.coefficient(comp({0, 0, 0})), 1);
	std::vector<std::pair<Composition, Scalar>> c0{{comp({0, 0, 0}), 1}, {comp({1, 0}), 1}};
	std::vector<std::pair<Composition, Scalar>> c1{{comp({0, 0}), 1}, {comp({1}), 1}};
	EXPECT_EQ(t.assembled.at(0), c0);
	EXPECT_EQ(t.assembled.at(1), c1);
	EXPECT_FALSE(t.assembled.count(3));
}

TEST(McCoefficients, AgreesWithPathEnumeration)
{
	for (unsigned M = 1; M <= 6; ++M)
	{
		std::map<Composition, long> weights, counts;
		enumerate_paths(M, comp({}), 1, weights, counts);
		MCTable t = mc_coefficients(1, M);
		ASSERT_EQ(t.entries.size(), weights.size());
		for (const auto &[s, w] : weights)
			EXPECT_EQ(t.coefficient(s), w) << s.to_string();
		EXPECT_EQ(mc_path_counts(M), counts);
	}
}

TEST(McCoefficients, EntriesStayInRange)
{
	for (unsigned M = 1; M <= 8; ++M)
	{
		MCTable t = mc_coefficients(1, M);
		for (const auto &[s, c] : t.entries)
			EXPECT_GE(t.remaining(s), 0);
		EXPECT_EQ(t.coefficient(comp({})), 1);
		for (const auto &[k, terms] : t.assembled)
			EXPECT_LT(k, M);
	}
}

TEST(McCoefficients, PathCountsGrowWithOutDegree)
{
	for (unsigned M = 1; M <= 7; ++M)
	{
		long next_total = 0, total = 0;
		for (const auto &[s, n] : mc_path_counts(M))
		{
			total += n;
			next_total += n * static_cast<long>(s.length() + 2);
		}
		long actual_next = 0;
		for (const auto &[s, n] : mc_path_counts(M + 1))
			actual_next += n;
		EXPECT_EQ(actual_next, next_total);
		EXPECT_GT(total, 0);
	}
}

TEST(McCoefficients, RejectsOutOfRange)
{
	EXPECT_THROW(mc_coefficients(0, 2), InputError);
	EXPECT_THROW(mc_coefficients(3, 2), InputError);
	EXPECT_THROW(mc_coefficients(2, 9), InputError);
}

TEST(NCPolynomial, ArithmeticAndRelation)
{
	auto D = NCPolynomial::letter(2, 'D');
	auto e = NCPolynomial::letter(2, 'e');
	EXPECT_TRUE((D * D).is_zero());
	EXPECT_EQ((D + e) * (D + e), D * e + e * D + e * e);
	EXPECT_EQ(((D + e) * (D + e)).to_string(), "De + eD + ee");
	EXPECT_EQ(e.derivative(), D * e + e * D);
	EXPECT_EQ((Scalar(-2) * e).to_string(), "-2 e");
	EXPECT_EQ(NCPolynomial(3).to_string(), "0");
	EXPECT_THROW(NCPolynomial::letter(2, 'x'), InputError);
}

TEST(NCPolynomial, IteratedDerivatives)
{
	EXPECT_TRUE(expand_composition(comp({2}), 2).is_zero());
	auto D = NCPolynomial::letter(3, 'D');
	auto e = NCPolynomial::letter(3, 'e');
	EXPECT_EQ(expand_composition(comp({3}), 3), D * D * e * D - D * e * D * D);
	auto D4 = NCPolynomial::letter(4, 'D');
	auto e4 = NCPolynomial::letter(4, 'e');
	EXPECT_EQ(expand_composition(comp({4}), 4), Scalar(-2) * (D4 * D4 * e4 * D4 * D4));
}

TEST(NcOracle, ClassicalCases)
{
	auto r = nc_oracle(2, 2);
	EXPECT_EQ(r.lhs.to_string(), "De + eD + ee");
	EXPECT_TRUE(r.equal());
	EXPECT_TRUE(nc_oracle(2, 3).equal());
}

TEST(NcOracle, UnrestrictedSumIsAnIdentity)
{
	for (unsigned N = 1; N <= 3; ++N)
		for (unsigned M = N; M <= 5; ++M)
			EXPECT_TRUE(nc_oracle(N, M).equal_without_restriction()) << N << "," << M;
}

TEST(NcOracle, RestrictedEquationForDgas)
{
	for (unsigned N = 1; N <= 2; ++N)
		for (unsigned M = N; M <= 6; ++M)
			EXPECT_TRUE(nc_oracle(N, M).equal()) << N << "," << M;
}

TEST(NcOracle, RestrictionDropsNonzeroTermsBeyondTwo)
{
	auto r = nc_oracle(3, 4);
	EXPECT_FALSE(r.equal());
	MCTable t = mc_coefficients(3, 4);
	NCPolynomial dropped(3);
	for (const auto &[s, c] : t.entries)
		if (s.length() > 0 && std::any_of(s.parts.begin(), s.parts.end(), [](unsigned p) { return p >= 3; }))
		{
			NCPolynomial term = c * expand_composition(s, 3);
			for (int k = 0; k < t.remaining(s); ++k)
				term = term * NCPolynomial::letter(3, 'D');
			dropped = dropped + term;
		}
	EXPECT_EQ(r.difference, dropped);
	EXPECT_TRUE(nc_oracle(3, 3).equal());
	EXPECT_FALSE(nc_oracle(4, 5).equal());
}

TEST(NcOracle, RejectsLargeInputs)
{
	EXPECT_THROW(nc_oracle(5, 5), InputError);
	EXPECT_THROW(nc_oracle(2, 7), InputError);
}

TEST(HMatrix, TruncatedProducts)
{
	SparseMatrix a(2, 2);
	a.set(0, 1, 1);
	HMatrix x = HMatrix::zero(2, 2);
	x.c[1] = SparseMatrix::identity(2);
	EXPECT_TRUE((x * x).is_zero());
	HMatrix y = HMatrix::constant(a, 2) + x;
	HMatrix y2 = y * y;
	EXPECT_TRUE(y2.c[0].is_zero());
	EXPECT_EQ(y2.c[1], Scalar(2) * a);
	EXPECT_THROW(HMatrix::zero(2, 0), InputError);
}

TEST(McResidual, ZeroDeformation)
{
	auto delta = codifferential(unital_line(), 3);
	auto r = mc_residual(delta, HMatrix::zero(delta.carrier().dim(), 2), 2, 2);
	EXPECT_TRUE(r.direct());
	EXPECT_TRUE(r.via_equation());
}

TEST(McResidual, CocycleGivesFirstOrderDeformation)
{
	auto A = dual_numbers();
	auto delta = codifferential(A, 3);
	GradedMultiMap f(A.space, 2, A.space, 0);
	f.add({"eps", "eps"}, "one", 1);
	auto r = mc_residual(delta, first_order(delta, f, 2), 2, 2);
	EXPECT_TRUE(r.direct());
	EXPECT_TRUE(r.via_equation());
}

TEST(McResidual, NonCocycleFailsBothWays)
{
	auto A = dual_numbers();
	auto delta = codifferential(A, 3);
	GradedMultiMap f(A.space, 2, A.space, 0);
	f.add({"one", "eps"}, "one", 1);
	auto r = mc_residual(delta, first_order(delta, f, 2), 2, 2);
	EXPECT_FALSE(r.direct());
	EXPECT_FALSE(r.via_equation());
	EXPECT_EQ(r.direct_value, r.equation_value);
}

TEST(McResidual, VerdictsAgreeAtHigherOrder)
{
	auto A = dual_numbers();
	auto delta = codifferential(A, 4);
	std::mt19937 rng(11);
	for (int trial = 0; trial < 4; ++trial)
	{
		GradedMultiMap f = random_map(rng, A.space, 2, 0, 40);
		HMatrix e = first_order(delta, f, 3);
		for (unsigned M = 2; M <= 4; ++M)
		{
			auto r = mc_residual(delta, e, 2, M);
			EXPECT_EQ(r.direct_value, r.equation_value) << "M=" << M;
		}
	}
}

TEST(McResidual, Preconditions)
{
	auto A = dual_numbers();
	auto delta = codifferential(A, 3);
	HMatrix e = HMatrix::zero(delta.carrier().dim(), 2);
	e.c[0] = SparseMatrix::identity(delta.carrier().dim());
	EXPECT_THROW(mc_residual(delta, e, 2, 2), PreconditionError);
	EXPECT_THROW(mc_residual(delta, HMatrix::zero(delta.carrier().dim(), 2), 1, 2), PreconditionError);
	EXPECT_THROW(mc_residual(delta, HMatrix::zero(3, 2), 2, 2), InputError);
}
