#include "ndepth/deformation.hpp"
#include "ndepth/error.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ndepth;
using namespace ndepth::testing;

namespace {

AlgebraPresentation algebra(const std::vector<std::string> &names,
                            const std::vector<std::tuple<std::string, std::string, std::string>> &products)
{
	AlgebraPresentation p;
	std::vector<BasisElement> basis;
	for (const auto &n : names)
		basis.push_back({n, 0});
	p.space = GradedSpace(basis);
	GradedMultiMap m(p.space, 2, p.space, 0);
	for (const auto &[x, y, z] : products)
		m.add(std::vector<std::string>{x, y}, z, 1);
	p.mult = m;
	p.declared_kind = StructureKind::ndga;
	p.declared_N = 2;
	return p;
}

AlgebraPresentation dual_numbers()
{
	return algebra({"one", "eps"}, {{"one", "one", "one"}, {"one", "eps", "eps"}, {"eps", "one", "eps"}});
}

AlgebraPresentation square_nilpotent() { return algebra({"a", "b"}, {{"a", "a", "b"}}); }

AlgebraPresentation zero_product() { return algebra({"a", "b"}, {}); }

SparseVector basis_vector(std::size_t i) { return SparseVector{{i, Scalar(1)}}; }

// a f(b,c) - f(ab,c) + f(a,bc) - f(a,b) c
GradedMultiMap hochschild(const GradedMultiMap &m, const GradedMultiMap &f)
{
	const GradedSpace &A = m.domain();
	GradedMultiMap out(A, 3, A, 0);
	auto mul = [&](const SparseVector &x, const SparseVector &y) { return m.apply(std::vector<SparseVector>{x, y}); };
	auto fv = [&](const SparseVector &x, const SparseVector &y) { return f.apply(std::vector<SparseVector>{x, y}); };
	for (const auto &t : all_tuples(A.dim(), 3))
	{
		auto a = basis_vector(t[0]), b = basis_vector(t[1]), c = basis_vector(t[2]);
		SparseVector v = mul(a, fv(b, c));
		add_scaled(v, fv(mul(a, b), c), -1);
		add_scaled(v, fv(a, mul(b, c)), 1);
		add_scaled(v, mul(fv(a, b), c), -1);
		for (const auto &[o, x] : v)
			out.add(t, o, x);
	}
	return out;
}

SparseVector shifted_coordinates(const CochainSpace &c, const GradedMultiMap &f) { return c.coordinates(to_shifted(f)); }

} // namespace

TEST(CochainSpace, FullDimension)
{
	CochainSpace c(GradedSpace({{"x", 0}, {"y", 1}}), 1, 3);
	EXPECT_EQ(c.dim(), 4u + 8u + 16u);
	EXPECT_EQ(c.describe(0), "m1(x) -> x");
	auto idx = c.index({1, 0}, 1);
	ASSERT_TRUE(idx.has_value());
	EXPECT_EQ(c.element(*idx).inputs, (std::vector<std::size_t>{1, 0}));
	EXPECT_FALSE(c.index({2}, 0).has_value());
}

TEST(CochainSpace, DegreeOneCochainsOfAnAlgebraAreBinary)
{
	DeformationProblem p{dual_numbers(), 2, 3};
	CochainSpace c2 = cochains_of_degree(p, 1);
	EXPECT_EQ(c2.dim(), 8u);
	for (std::size_t i = 0; i < c2.dim(); ++i)
		EXPECT_EQ(c2.element(i).inputs.size(), 2u);
	EXPECT_EQ(cochains_of_degree(p, 0).dim(), 4u);
}

TEST(TOperator, ZeroProductGivesZero)
{
	DeformationProblem p{zero_product(), 2, 3};
	CochainSpace c2 = cochains_of_degree(p, 1);
	for (unsigned k = 1; k <= 4; ++k)
		EXPECT_TRUE(t_operator(p, k, c2).is_zero()) << k;
}

TEST(TOperator, UnitalLineAtThreeVanishes)
{
	DeformationProblem p{unital_line(), 2, 3};
	EXPECT_TRUE(t_operator(p, 3, cochains_of_degree(p, 1)).is_zero());
	EXPECT_TRUE(t_operator(p, 2, cochains_of_degree(p, 1)).is_zero());
	EXPECT_FALSE(t_operator(p, 1, cochains_of_degree(p, 0)).is_zero());
}

TEST(TOperator, CommutatorIsTheHochschildDifferential)
{
	for (const auto &A : {dual_numbers(), square_nilpotent(), algebra({"e", "f"}, {{"e", "e", "e"}, {"e", "f", "f"}})})
	{
		DeformationProblem p{A, 2, 3};
		CochainSpace c2(A.space, 2, 2), c3(A.space, 3, 3);
		SparseMatrix d = commutator_cochains(p, c2, c3);
		std::optional<int> global;
		for (std::size_t i = 0; i < c2.dim(); ++i)
		{
			GradedMultiMap f(A.space, 2, A.space, 0);
			f.add(c2.element(i).inputs, c2.element(i).output, 1);
			SparseVector expected = shifted_coordinates(c3, hochschild(*A.mult, f));
			SparseVector actual = d.apply(shifted_coordinates(c2, f));
			if (expected.empty())
			{
				EXPECT_TRUE(actual.empty());
				continue;
			}
			int s = actual == expected ? 1 : actual == scaled(expected, -1) ? -1 : 0;
			ASSERT_NE(s, 0) << c2.describe(i);
			if (!global)
				global = s;
			EXPECT_EQ(s, *global);
		}
	}
}

TEST(TOperator, RejectsArityBeyondTruncation)
{
	DeformationProblem p{dual_numbers(), 2, 2};
	p.truncation = 3;
	EXPECT_THROW(t_operator(p, 2, CochainSpace(p.algebra.space, 4, 4)), InputError);
	EXPECT_THROW(t_operator(p, 0, CochainSpace(p.algebra.space, 2, 2)), InputError);
}

TEST(Cohomology, UnitalLine)
{
	auto r = cohomology_HNM({unital_line(), 2, 3});
	EXPECT_EQ(r.dim_ker_tM, 1u);
	EXPECT_EQ(r.dim_im_t1, 1u);
	EXPECT_EQ(r.dim_H, 0u);
}

TEST(Cohomology, ZeroProductEverythingIsACocycle)
{
	auto r = cohomology_HNM({zero_product(), 2, 2});
	EXPECT_EQ(r.dim_ker_tM, r.dim_c2);
	EXPECT_EQ(r.dim_im_t1, 0u);
	EXPECT_EQ(r.dim_H, r.dim_c2);
}

TEST(Cohomology, DualNumbersMatchHochschild)
{
	// HH^2 of k[eps]/(eps^2) over a field of characteristic 0 is one-dimensional
	auto r = cohomology_HNM({dual_numbers(), 2, 2});
	EXPECT_EQ(r.dim_H, 1u);
}

TEST(Cohomology, RejectsNonNilpotentInput)
{
	EXPECT_THROW(cohomology_HNM({unital_line(), 1, 2}), PreconditionError);
	EXPECT_THROW(cohomology_HNM({unital_line(), 3, 2}), InputError);
}

TEST(Telescoping, VanishesFromNOn)
{
	for (const auto &A : {unital_line(), dual_numbers(), square_nilpotent()})
		for (const auto &t : telescoping({A, 2, 3}, 4))
			EXPECT_TRUE(t.vanishes) << t.k;
	// strictly 3-nilpotent only on short words
	DeformationProblem four{four_generator_algebra(), 3, 3};
	four.truncation = 4;
	for (const auto &t : telescoping(four, 4))
		EXPECT_TRUE(t.vanishes) << t.k;
}

TEST(Telescoping, StrictNilpotencyIsRequired)
{
	DeformationProblem p{four_generator_algebra(), 3, 3};
	p.truncation = 5;
	EXPECT_THROW(telescoping(p, 4), PreconditionError);
}

TEST(KernelInclusion, HoldsElementwise)
{
	for (const auto &A : {unital_line(), dual_numbers(), square_nilpotent(), zero_product()})
		for (unsigned M = 2; M <= 3; ++M)
		{
			auto r = kernel_inclusion({A, 2, M});
			EXPECT_TRUE(r.included);
			EXPECT_FALSE(r.witness.has_value());
			EXPECT_LE(r.dim_ker_M, r.dim_ker_M1);
		}
}

TEST(ProperSearch, NoneForUnitalLineAndZeroProduct)
{
	EXPECT_FALSE(proper_search({unital_line(), 2, 3}).certificate.has_value());
	EXPECT_FALSE(proper_search({zero_product(), 2, 3}).certificate.has_value());
	EXPECT_THROW(proper_search({unital_line(), 2, 2}), InputError);
}

TEST(ProperSearch, SquareNilpotentCertificateNeedsShortCarrier)
{
	DeformationProblem p{square_nilpotent(), 2, 3};
	EXPECT_EQ(p.carrier_length(), 8u);
	auto stable = proper_search(p);
	EXPECT_FALSE(stable.certificate.has_value());
	EXPECT_EQ(stable.dim_ker_M, stable.dim_ker_M_minus_1);

	p.truncation = 4;
	auto r = proper_search(p);
	ASSERT_TRUE(r.certificate.has_value());
	ASSERT_TRUE(r.check.has_value());
	EXPECT_TRUE(r.check->kernel_M);
	EXPECT_FALSE(r.check->kernel_M_minus_1);
	EXPECT_EQ(r.check->identity_order_three, std::optional<bool>(true));
	EXPECT_EQ(r.check->identity_order_two, std::optional<bool>(false));
	EXPECT_TRUE(r.check->witness.has_value());
	EXPECT_GT(r.dim_ker_M, r.dim_ker_M_minus_1);

	// the same cochain leaves ker t_3 once longer words are present
	p.truncation = 6;
	EXPECT_FALSE(verify_certificate(p, *r.certificate).kernel_M);
}

TEST(CarrierLength, KernelsAreStableBeyondDefault)
{
	for (const auto &A : {unital_line(), dual_numbers(), square_nilpotent()})
		for (unsigned M = 2; M <= 3; ++M)
		{
			DeformationProblem p{A, 2, M};
			auto base = cohomology_HNM(p);
			p.truncation = p.carrier_length() + 1;
			auto longer = cohomology_HNM(p);
			EXPECT_EQ(base.dim_ker_tM, longer.dim_ker_tM);
			EXPECT_EQ(base.dim_H, longer.dim_H);
		}
}

TEST(VerifyCertificate, IdentitiesFollowTheOperators)
{
	std::mt19937 rng(5);
	for (const auto &A : {dual_numbers(), square_nilpotent(), algebra({"e", "f"}, {{"e", "e", "e"}, {"e", "f", "f"}})})
	{
		// the identities see single-output words only
		DeformationProblem p{A, 2, 3};
		p.truncation = 4;
		CochainSpace c2 = cochains_of_degree(p, 1);
		for (int trial = 0; trial < 6; ++trial)
		{
			SparseVector f;
			for (std::size_t i = 0; i < c2.dim(); ++i)
				if (rng() % 2)
					add_entry(f, i, Scalar(static_cast<long>(rng() % 3) - 1));
			auto check = verify_certificate(p, f);
			EXPECT_EQ(check.identity_order_three, std::optional<bool>(check.kernel_M));
			EXPECT_EQ(check.identity_order_two, std::optional<bool>(check.kernel_M_minus_1));
		}
	}
}

TEST(FullCheck, CocycleAndNonCocycle)
{
	DeformationProblem p{dual_numbers(), 2, 2};
	CochainSpace c2 = cochains_of_degree(p, 1);
	GradedMultiMap f(p.algebra.space, 2, p.algebra.space, 0);
	f.add(std::vector<std::string>{"eps", "eps"}, "one", 1);
	auto good = full_check(p, {{{}, shifted_coordinates(c2, f)}});
	EXPECT_TRUE(good.deformation);
	EXPECT_TRUE(good.first_order_kernel);
	EXPECT_TRUE(good.matches_first_order);

	GradedMultiMap g(p.algebra.space, 2, p.algebra.space, 0);
	g.add(std::vector<std::string>{"one", "eps"}, "one", 1);
	auto bad = full_check(p, {{{}, shifted_coordinates(c2, g)}});
	EXPECT_FALSE(bad.deformation);
	EXPECT_FALSE(bad.first_order_kernel);
	EXPECT_TRUE(bad.matches_first_order);
	EXPECT_FALSE(bad.agrees_with_equation.has_value());
}

TEST(FullCheck, AgreesWithInfinitesimalClassification)
{
	std::mt19937 rng(9);
	for (const auto &A : {dual_numbers(), square_nilpotent()})
		for (unsigned M = 2; M <= 3; ++M)
		{
			DeformationProblem p{A, 2, M};
			CochainSpace c2 = cochains_of_degree(p, 1);
			for (int trial = 0; trial < 5; ++trial)
			{
				SparseVector f;
				for (std::size_t i = 0; i < c2.dim(); ++i)
					if (rng() % 3 == 0)
						add_entry(f, i, Scalar(static_cast<long>(rng() % 3) - 1));
				auto r = full_check(p, {{{}, f}});
				EXPECT_EQ(r.deformation, r.first_order_kernel);
				EXPECT_TRUE(r.matches_first_order);
			}
		}
}

TEST(FullCheck, SecondOrderCrossCheck)
{
	DeformationProblem p{dual_numbers(), 2, 2};
	p.base_power = 3;
	CochainSpace c2 = cochains_of_degree(p, 1);
	std::mt19937 rng(3);
	for (int trial = 0; trial < 4; ++trial)
	{
		SparseVector f, g;
		for (std::size_t i = 0; i < c2.dim(); ++i)
		{
			if (rng() % 2)
				add_entry(f, i, Scalar(static_cast<long>(rng() % 3) - 1));
			if (rng() % 2)
				add_entry(g, i, Scalar(static_cast<long>(rng() % 3) - 1));
		}
		auto r = full_check(p, {{{}, f, g}});
		ASSERT_TRUE(r.agrees_with_equation.has_value());
		EXPECT_TRUE(*r.agrees_with_equation);
	}
}

TEST(FullCheck, ZeroAndInvalidDeformations)
{
	DeformationProblem p{dual_numbers(), 2, 2};
	EXPECT_TRUE(full_check(p, {}).deformation);
	EXPECT_THROW(full_check(p, {{basis_vector(0)}}), PreconditionError);
}
