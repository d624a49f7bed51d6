#include "ndepth/error.hpp"
#include "ndepth/graded.hpp"
#include "ndepth/operadcount.hpp"
#include "ndepth/tensorcoalg.hpp"
#include "ndepth/trees.hpp"

#include <bit>
#include <functional>
#include <memory>

namespace ndepth {

namespace {

/// Multilinear part of the free algebra on one unary d and one binary m over
/// letters x1..xn, truncated at U occurrences of d. Basis elements use distinct
/// letters; products of overlapping elements are outside the model.
class FreeModel
{
public:
	FreeModel(unsigned n, unsigned U) : n_(n), U_(U)
	{
		for (unsigned size = 1; size <= n; ++size)
			for (unsigned mask = 1; mask < (1u << n); ++mask)
			{
				if (static_cast<unsigned>(std::popcount(mask)) != size)
					continue;
				for (unsigned u = 0; u <= U; ++u)
					fill_bucket(mask, u);
			}
	}

	unsigned letters() const { return n_; }
	unsigned max_d() const { return U_; }
	std::size_t size() const { return names_.size(); }
	unsigned mask(std::size_t i) const { return masks_[i]; }
	int degree(std::size_t i) const { return degrees_[i]; }

	const std::vector<std::size_t> &bucket(unsigned mask, unsigned u) const
	{
		static const std::vector<std::size_t> empty;
		auto it = buckets_.find({mask, u});
		return it == buckets_.end() ? empty : it->second;
	}

	std::optional<std::size_t> d(std::size_t i) const { return lookup("d(" + names_[i] + ")"); }
	std::optional<std::size_t> m(std::size_t i, std::size_t j) const
	{
		if (masks_[i] & masks_[j])
			return std::nullopt;
		return lookup("m(" + names_[i] + "," + names_[j] + ")");
	}

	SparseVector dv(const SparseVector &v) const
	{
		SparseVector out;
		for (const auto &[i, c] : v)
			if (auto r = d(i))
				add_entry(out, *r, c);
		return out;
	}

	SparseVector mv(const SparseVector &a, const SparseVector &b) const
	{
		SparseVector out;
		for (const auto &[i, ci] : a)
			for (const auto &[j, cj] : b)
				if (auto r = m(i, j))
					add_entry(out, *r, ci * cj);
		return out;
	}

	GradedSpace space() const
	{
		std::vector<BasisElement> basis;
		for (std::size_t i = 0; i < size(); ++i)
			basis.push_back({names_[i], degrees_[i]});
		return GradedSpace(basis);
	}

	GradedMultiMap d_map(const GradedSpace &s) const
	{
		GradedMultiMap f(s, 1, s, 1);
		for (std::size_t i = 0; i < size(); ++i)
			if (auto r = d(i))
				f.add({i}, *r, 1);
		return f;
	}

	GradedMultiMap m_map(const GradedSpace &s) const
	{
		GradedMultiMap f(s, 2, s, 0);
		for (const auto &[name, idx] : index_)
			if (name[0] == 'm')
				f.add({left_[idx], right_[idx]}, idx, 1);
		return f;
	}

private:
	unsigned n_, U_;
	std::vector<std::string> names_;
	std::vector<unsigned> masks_;
	std::vector<int> degrees_;
	std::vector<std::size_t> left_, right_;
	std::map<std::string, std::size_t> index_;
	std::map<std::pair<unsigned, unsigned>, std::vector<std::size_t>> buckets_;

	std::optional<std::size_t> lookup(const std::string &name) const
	{
		auto it = index_.find(name);
		if (it == index_.end())
			return std::nullopt;
		return it->second;
	}

	void add(std::string name, unsigned mask, unsigned u, std::size_t l = 0, std::size_t r = 0)
	{
		std::size_t idx = names_.size();
		index_[name] = idx;
		names_.push_back(std::move(name));
		masks_.push_back(mask);
		degrees_.push_back(static_cast<int>(u));
		left_.push_back(l);
		right_.push_back(r);
		buckets_[{mask, u}].push_back(idx);
	}

	void fill_bucket(unsigned mask, unsigned u)
	{
		if (std::popcount(mask) == 1 && u == 0)
			add("x" + std::to_string(std::countr_zero(mask) + 1), mask, 0);
		if (u > 0)
			for (auto e : std::vector<std::size_t>(bucket(mask, u - 1)))
				add("d(" + names_[e] + ")", mask, u);
		for (unsigned sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask)
			for (unsigned u1 = 0; u1 <= u; ++u1)
				for (auto a : std::vector<std::size_t>(bucket(sub, u1)))
					for (auto b : std::vector<std::size_t>(bucket(mask & ~sub, u - u1)))
						add("m(" + names_[a] + "," + names_[b] + ")", mask, u, a, b);
	}
};

/// An l-ary relation adding u0 occurrences of d, evaluated on basis tuples.
struct Relation
{
	std::size_t arity;
	unsigned extra_d;
	std::function<SparseVector(const std::vector<std::size_t> &)> eval;
};

void for_each_tuple(const FreeModel &F, std::size_t arity, unsigned budget,
                    const std::function<void(const std::vector<std::size_t> &)> &visit)
{
	std::vector<std::size_t> tuple;
	std::function<void(unsigned, unsigned)> rec = [&](unsigned used, unsigned degree) {
		if (tuple.size() == arity)
		{
			visit(tuple);
			return;
		}
		for (std::size_t i = 0; i < F.size(); ++i)
			if (!(F.mask(i) & used) && degree + F.degree(i) <= budget)
			{
				tuple.push_back(i);
				rec(used | F.mask(i), degree + F.degree(i));
				tuple.pop_back();
			}
	};
	rec(0, 0);
}

/// Dimensions of the operadic ideal generated by the relations, per bucket
/// (letter set, number of d's), for the full letter set.
std::vector<long> ideal_dims(const FreeModel &F, const std::vector<Relation> &relations)
{
	const unsigned n = F.letters(), U = F.max_d();
	std::map<std::pair<unsigned, unsigned>, EchelonBasis> ideal;
	auto bucket_of = [&](const SparseVector &v) {
		auto i = v.begin()->first;
		return std::make_pair(F.mask(i), static_cast<unsigned>(F.degree(i)));
	};
	for (const auto &rel : relations)
	{
		if (rel.extra_d > U)
			continue;
		for_each_tuple(F, rel.arity, U - rel.extra_d, [&](const auto &t) {
			SparseVector v = rel.eval(t);
			if (!v.empty())
				ideal[bucket_of(v)].insert(std::move(v));
		});
	}
	for (unsigned size = 1; size <= n; ++size)
		for (unsigned mask = 1; mask < (1u << n); ++mask)
		{
			if (static_cast<unsigned>(std::popcount(mask)) != size)
				continue;
			for (unsigned u = 0; u <= U; ++u)
			{
				EchelonBasis &target = ideal[{mask, u}];
				if (u > 0)
					for (const auto &v : ideal[{mask, u - 1}].vectors())
						target.insert(F.dv(v));
				for (unsigned sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask)
					for (unsigned u1 = 0; u1 <= u; ++u1)
					{
						auto generators = ideal[{sub, u1}].vectors();
						for (const auto &v : generators)
							for (auto e : F.bucket(mask & ~sub, u - u1))
							{
								SparseVector ev{{e, Scalar(1)}};
								target.insert(F.mv(v, ev));
								target.insert(F.mv(ev, v));
							}
					}
			}
		}
	std::vector<long> dims;
	const unsigned full = (1u << n) - 1;
	for (unsigned u = 0; u <= U; ++u)
		dims.push_back(static_cast<long>(ideal[{full, u}].size()));
	return dims;
}

SparseVector unit(std::size_t i) { return SparseVector{{i, Scalar(1)}}; }

SparseVector eval_tree(const FreeModel &F, const PlanarTree &t, std::size_t v, const std::vector<std::size_t> &inputs,
                       std::size_t &next)
{
	const auto &children = t.vertices()[v].children;
	if (t.is_leaf(v))
		return unit(inputs[next++]);
	if (children.size() == 1)
		return F.dv(eval_tree(F, t, children[0], inputs, next));
	SparseVector a = eval_tree(F, t, children[0], inputs, next);
	SparseVector b = eval_tree(F, t, children[1], inputs, next);
	return F.mv(a, b);
}

Relation unsigned_relation(const FreeModel &F, std::size_t l, unsigned u0)
{
	auto trees = std::make_shared<std::vector<PlanarTree>>(enumerate_ub(l, u0, l - 1));
	return {l, u0, [&F, trees](const std::vector<std::size_t> &y) {
		        SparseVector sum;
		        for (const auto &t : *trees)
		        {
			        std::size_t next = 0;
			        for (const auto &[i, c] : eval_tree(F, t, t.top(), y, next))
				        add_entry(sum, i, c);
		        }
		        return sum;
	        }};
}

/// Corestriction of delta^N on the word (y_1..y_l) in T(F[1]).
Relation weighted_relation(const FreeModel &F, std::shared_ptr<Coderivation> delta, unsigned N, std::size_t l)
{
	return {l, static_cast<unsigned>(N + 1 - l), [&F, delta, N](const std::vector<std::size_t> &y) {
		        SparseVector v{{delta->carrier().index(y), Scalar(1)}};
		        for (unsigned p = 0; p < N; ++p)
			        v = delta->apply(v);
		        SparseVector out;
		        for (const auto &[i, c] : v)
			        if (i < F.size())
				        out.emplace(i, c);
		        return out;
	        }};
}

std::shared_ptr<Coderivation> free_coderivation(const FreeModel &F, std::size_t max_length)
{
	GradedSpace s = F.space();
	std::map<std::size_t, GradedMultiMap> family{{1, to_shifted(F.d_map(s))}, {2, to_shifted(F.m_map(s))}};
	return std::make_shared<Coderivation>(family, TruncatedCoalgebra(shift(s, 1), max_length));
}

std::vector<Relation> depth_relations(const FreeModel &F, unsigned N, RelationStyle style)
{
	std::vector<Relation> rels;
	std::shared_ptr<Coderivation> delta;
	if (style == RelationStyle::weighted)
		delta = free_coderivation(F, std::max<std::size_t>(2, std::min<std::size_t>(N + 1, F.letters())));
	for (std::size_t l = 1; l <= N + 1 && l <= F.letters(); ++l)
		rels.push_back(style == RelationStyle::weighted ? weighted_relation(F, delta, N, l)
		                                               : unsigned_relation(F, l, static_cast<unsigned>(N + 1 - l)));
	return rels;
}

long catalan(unsigned k)
{
	long c = 1;
	for (unsigned i = 0; i < k; ++i)
		c = c * 2 * (2 * i + 1) / (i + 2);
	return c;
}

long factorial(unsigned n) { return n <= 1 ? 1 : n * factorial(n - 1); }

void check_bounds(unsigned N, unsigned n_max)
{
	if (N < 1)
		throw InputError("N must be at least 1");
	if (n_max > 6)
		throw InputError("free model limited to at most 6 letters");
}

} // namespace

std::vector<AssRow> assN_dims(unsigned N, unsigned n_max)
{
	check_bounds(N, std::min(n_max, N + 1));
	std::vector<AssRow> rows;
	for (unsigned n = 1; n <= std::min(n_max, N + 1); ++n)
	{
		FreeModel F(n, 0);
		AssRow r;
		r.n = n;
		r.free_dim = static_cast<long>(F.bucket((1u << n) - 1, 0).size());
		std::vector<Relation> unsigned_rels, weighted_rels;
		if (n == N + 1)
		{
			unsigned_rels.push_back(unsigned_relation(F, n, 0));
			weighted_rels.push_back(weighted_relation(F, free_coderivation(F, std::max(2u, n)), N, n));
		}
		r.rank_unsigned = ideal_dims(F, unsigned_rels).at(0);
		r.rank_weighted = ideal_dims(F, weighted_rels).at(0);
		r.dim_unsigned = r.free_dim - r.rank_unsigned;
		r.dim_weighted = r.free_dim - r.rank_weighted;
		r.closed_form = n <= N ? factorial(n) * catalan(n - 1) : factorial(N + 1) * (catalan(N) - 1);
		if (n == N + 1)
		{
			mpz_class binom;
			mpz_bin_uiui(binom.get_mpz_t(), 2 * N, N);
			r.binomial_formula = Scalar(binom) / Scalar(factorial(N)) - Scalar(factorial(N + 1));
		}
		rows.push_back(r);
	}
	return rows;
}

std::vector<QuotientRow> dgass_dims(unsigned N, unsigned n_max, unsigned u_max, RelationStyle style)
{
	check_bounds(N, n_max);
	std::vector<QuotientRow> rows;
	for (unsigned n = 1; n <= n_max; ++n)
	{
		FreeModel F(n, u_max);
		auto dims = ideal_dims(F, depth_relations(F, N, style));
		for (unsigned u = 0; u <= u_max; ++u)
			rows.push_back({n, u, static_cast<long>(F.bucket((1u << n) - 1, u).size()), dims[u]});
	}
	return rows;
}

std::vector<QuotientRow> ndga_quotient_dims(unsigned N, unsigned n_max, unsigned u_max)
{
	check_bounds(N, n_max);
	std::vector<QuotientRow> rows;
	for (unsigned n = 1; n <= n_max; ++n)
	{
		FreeModel F(n, u_max);
		std::vector<Relation> rels;
		rels.push_back({3, 0, [&F](const auto &y) {
			                SparseVector left = F.mv(F.mv(unit(y[0]), unit(y[1])), unit(y[2]));
			                for (const auto &[i, c] : F.mv(unit(y[0]), F.mv(unit(y[1]), unit(y[2]))))
				                add_entry(left, i, -c);
			                return left;
		                }});
		rels.push_back({2, 1, [&F](const auto &y) {
			                SparseVector v = F.dv(F.mv(unit(y[0]), unit(y[1])));
			                for (const auto &[i, c] : F.mv(F.dv(unit(y[0])), unit(y[1])))
				                add_entry(v, i, -c);
			                Scalar sign = F.degree(y[0]) % 2 ? 1 : -1;
			                for (const auto &[i, c] : F.mv(unit(y[0]), F.dv(unit(y[1]))))
				                add_entry(v, i, sign * c);
			                return v;
		                }});
		rels.push_back({1, N, [&F, N](const auto &y) {
			                SparseVector v = unit(y[0]);
			                for (unsigned p = 0; p < N; ++p)
				                v = F.dv(v);
			                return v;
		                }});
		auto dims = ideal_dims(F, rels);
		for (unsigned u = 0; u <= u_max; ++u)
			rows.push_back({n, u, static_cast<long>(F.bucket((1u << n) - 1, u).size()), dims[u]});
	}
	return rows;
}

} // namespace ndepth
