#pragma once

#include "ndepth/graded.hpp"
#include "ndepth/structures.hpp"
#include "ndepth/tensorcoalg.hpp"

#include <map>
#include <random>
#include <string>

namespace ndepth::testing {

/// End(V) for the complex V_0 --id--> V_1: basis e<i><j> : V_j -> V_i of degree
/// i - j, composition product and differential [d, -] with d = e10.
struct EndDga
{
	GradedSpace space;
	GradedMultiMap d;
	GradedMultiMap m;
};

inline EndDga end_of_two_term_complex()
{
	GradedSpace a({{"e00", 0}, {"e01", -1}, {"e10", 1}, {"e11", 0}});
	GradedMultiMap m(a, 2, a, 0);
	for (int i = 0; i < 2; ++i)
		for (int j = 0; j < 2; ++j)
			for (int l = 0; l < 2; ++l)
			{
				auto e = [](int p, int q) { return "e" + std::to_string(p) + std::to_string(q); };
				m.add({e(i, j), e(j, l)}, e(i, l), 1);
			}
	GradedMultiMap d(a, 1, a, 1);
	d.add({"e00"}, "e10", 1);
	d.add({"e11"}, "e10", -1);
	d.add({"e01"}, "e00", 1);
	d.add({"e01"}, "e11", 1);
	return {a, d, m};
}

/// u -> v -> w in degrees 0, 1, 2 with no product.
inline GradedMultiMap three_chain_differential()
{
	GradedSpace a({{"u", 0}, {"v", 1}, {"w", 2}});
	GradedMultiMap d(a, 1, a, 1);
	d.add({"u"}, "v", 1);
	d.add({"v"}, "w", 1);
	return d;
}

/// Random degree-homogeneous map of the given arity and degree.
inline GradedMultiMap random_map(std::mt19937 &rng, const GradedSpace &v, std::size_t arity, int degree,
                                 int density_percent = 50)
{
	GradedMultiMap f(v, arity, v, degree);
	std::uniform_int_distribution<int> pct(0, 99), val(-2, 2);
	for (const auto &t : all_tuples(v.dim(), arity))
	{
		int target = f.input_degree(t) + degree;
		for (std::size_t o = 0; o < v.dim(); ++o)
			if (v.degree(o) == target && pct(rng) < density_percent)
				f.add(t, o, val(rng));
	}
	return f;
}

inline std::map<std::size_t, GradedMultiMap> shifted_family(const GradedMultiMap &d, const GradedMultiMap &m)
{
	return {{1, to_shifted(d)}, {2, to_shifted(m)}};
}

inline AlgebraPresentation as_presentation(const EndDga &e, StructureKind kind = StructureKind::ndga, unsigned N = 2)
{
	AlgebraPresentation p;
	p.space = e.space;
	p.mult = e.m;
	p.diff = e.d;
	p.declared_kind = kind;
	p.declared_N = N;
	return p;
}

/// a.a = b, a.b = d, b.a = c, all other products zero.
inline AlgebraPresentation four_generator_algebra()
{
	AlgebraPresentation p;
	p.space = GradedSpace({{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}});
	GradedMultiMap m(p.space, 2, p.space, 0);
	m.add({"a", "a"}, "b", 1);
	m.add({"a", "b"}, "d", 1);
	m.add({"b", "a"}, "c", 1);
	p.mult = m;
	p.declared_kind = StructureKind::nassociative;
	p.declared_N = 3;
	return p;
}

/// The one-dimensional algebra x.x = x with zero differential.
inline AlgebraPresentation unital_line()
{
	AlgebraPresentation p;
	p.space = GradedSpace({{"x", 0}});
	GradedMultiMap m(p.space, 2, p.space, 0);
	m.add({"x", "x"}, "x", 1);
	p.mult = m;
	p.diff = GradedMultiMap(p.space, 1, p.space, 1);
	p.declared_kind = StructureKind::ndga;
	p.declared_N = 2;
	return p;
}

inline AlgebraPresentation complex_of(const GradedMultiMap &d, unsigned N)
{
	AlgebraPresentation p;
	p.space = d.domain();
	p.diff = d;
	p.declared_kind = StructureKind::ncomplex;
	p.declared_N = N;
	return p;
}

/// Random complex of dimension <= max_dim with degrees in [0, N) and d^N = 0.
inline GradedMultiMap random_complex(std::mt19937 &rng, unsigned N, std::size_t max_dim)
{
	while (true)
	{
		std::size_t dim = 1 + rng() % max_dim;
		std::vector<BasisElement> basis;
		for (std::size_t i = 0; i < dim; ++i)
			basis.push_back({"c" + std::to_string(i), static_cast<int>(rng() % std::max(N, 1u))});
		GradedSpace v(basis);
		GradedMultiMap d = random_map(rng, v, 1, 1, 70);
		if (d.matrix().power(N).is_zero())
			return d;
	}
}

} // namespace ndepth::testing
