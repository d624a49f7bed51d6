#include "ndepth/error.hpp"
#include "ndepth/structures.hpp"

#include <functional>

namespace ndepth {

namespace {

const GradedMultiMap *differential_of(const AlgebraPresentation &p)
{
	if (p.diff)
		return &*p.diff;
	if (auto it = p.higher.find(1); it != p.higher.end())
		return &it->second;
	return nullptr;
}

SparseMatrix differential_matrix(const AlgebraPresentation &p)
{
	const GradedMultiMap *d = differential_of(p);
	return d ? d->matrix() : SparseMatrix(p.space.dim(), p.space.dim());
}

} // namespace

AlgebraPresentation commutator_dgla(const AlgebraPresentation &p, unsigned N)
{
	if (!validate_ndga(p, N).valid())
		throw PreconditionError("commutator_dgla: input is not a valid " + std::to_string(N) + "-dga");
	const auto &m = *p.mult;
	GradedMultiMap bracket(p.space, 2, p.space, 0);
	for (const auto &[t, out] : m.entries())
	{
		for (const auto &[o, c] : out)
		{
			bracket.add(t, o, c);
			Tuple swapped{t[1], t[0]};
			bracket.add(swapped, o, -koszul_sign(p.space.degree(t[0]), p.space.degree(t[1])) * c);
		}
	}
	AlgebraPresentation out;
	out.space = p.space;
	out.diff = p.diff;
	out.bracket = std::move(bracket);
	out.declared_kind = StructureKind::ndgla;
	out.declared_N = N;
	return out;
}

AlgebraPresentation end_dga(const AlgebraPresentation &c, unsigned N)
{
	const GradedMultiMap *delta = differential_of(c);
	if (!delta)
		throw InputError("end_dga needs a codifferential on C");
	SparseMatrix dm = delta->matrix();
	if (N < 1 || !dm.power(N).is_zero())
		throw PreconditionError("end_dga: delta^" + std::to_string(N) + " != 0 on C");

	const GradedSpace &v = c.space;
	const std::size_t n = v.dim();
	std::vector<BasisElement> basis;
	for (std::size_t x = 0; x < n; ++x)
		for (std::size_t y = 0; y < n; ++y)
			basis.push_back({"E(" + v.name(x) + "," + v.name(y) + ")", v.degree(x) - v.degree(y)});
	GradedSpace end(std::move(basis));
	auto e = [n](std::size_t x, std::size_t y) { return x * n + y; };

	GradedMultiMap mult(end, 2, end, 0);
	for (std::size_t x = 0; x < n; ++x)
		for (std::size_t y = 0; y < n; ++y)
			for (std::size_t z = 0; z < n; ++z)
				mult.add(Tuple{e(x, y), e(y, z)}, e(x, z), 1);

	GradedMultiMap d(end, 1, end, 1);
	for (std::size_t x = 0; x < n; ++x)
		for (std::size_t y = 0; y < n; ++y)
		{
			int f_degree = v.degree(x) - v.degree(y);
			// delta o E(x,y) = sum_x' delta[x',x] E(x',y)
			for (const auto &[xp, coeff] : dm.column(x))
				d.add(Tuple{e(x, y)}, e(xp, y), coeff);
			// E(x,y) o delta = sum_z delta[y,z] E(x,z)
			for (std::size_t z = 0; z < n; ++z)
			{
				Scalar coeff = dm.get(y, z);
				if (coeff != 0)
					d.add(Tuple{e(x, y)}, e(x, z), -koszul_sign(f_degree, 1) * coeff);
			}
		}

	AlgebraPresentation out;
	out.space = end;
	out.mult = mult;
	out.diff = std::move(d);
	out.declared_kind = StructureKind::ndga;
	out.declared_N = 2 * N - 1;
	return out;
}

std::vector<std::size_t> kapranov_cohomology(const SparseMatrix &d, unsigned N)
{
	if (N < 1 || !d.power(N).is_zero())
		throw PreconditionError("kapranov_cohomology: d^" + std::to_string(N) + " != 0");
	std::vector<std::size_t> dims;
	for (unsigned p = 1; p < N; ++p)
		dims.push_back(subquotient_dim(d.power(p), d.power(N - p)));
	return dims;
}

std::vector<std::size_t> kapranov_cohomology(const AlgebraPresentation &p, unsigned N)
{
	return kapranov_cohomology(differential_matrix(p), N);
}

TensorProductReport tensor_product_structure(const AlgebraPresentation &a, unsigned N,
                                             const AlgebraPresentation &b, unsigned M, std::size_t L)
{
	Coderivation da(a.shifted_components(), TruncatedCoalgebra(shift(a.space, 1), L));
	Coderivation db(b.shifted_components(), TruncatedCoalgebra(shift(b.space, 1), L));
	if (!strict_nilpotency(da, N).holds)
		throw PreconditionError("tensor_product_structure: first factor is not strictly " + std::to_string(N) +
		                        "-nilpotent at truncation " + std::to_string(L));
	if (!strict_nilpotency(db, M).holds)
		throw PreconditionError("tensor_product_structure: second factor is not strictly " + std::to_string(M) +
		                        "-nilpotent at truncation " + std::to_string(L));

	const auto &ca = da.carrier();
	const auto &cb = db.carrier();
	const std::size_t nb = cb.dim();
	SparseMatrix t(ca.dim() * nb, ca.dim() * nb);
	const SparseMatrix &ma = da.matrix();
	const SparseMatrix &mb = db.matrix();
	for (std::size_t i = 0; i < ca.dim(); ++i)
	{
		int sign = koszul_sign(ca.degree(ca.word(i)), 1);
		for (std::size_t j = 0; j < nb; ++j)
		{
			for (const auto &[ip, c] : ma.column(i))
				t.add(ip * nb + j, i * nb + j, c);
			for (const auto &[jp, c] : mb.column(j))
				t.add(i * nb + jp, i * nb + j, sign * c);
		}
	}

	TensorProductReport r;
	r.N = N;
	r.M = M;
	r.truncation = L;
	r.carrier_dim = t.cols();
	const unsigned bound = N + M - 1;
	SparseMatrix power = SparseMatrix::identity(t.cols());
	bool below_zero = false;
	for (unsigned k = 1; k <= bound; ++k)
	{
		power = t * power;
		if (k + 1 == bound)
			below_zero = power.is_zero();
		if (r.nilpotency_order == 0 && power.is_zero())
			r.nilpotency_order = k;
	}
	r.strict_at_bound = power.is_zero();
	r.proper_below_bound = bound >= 2 && !below_zero;
	r.operator_matrix = std::move(t);
	return r;
}

SparseMatrix lift_morphism(const MorphismData &f, const TruncatedCoalgebra &source, const TruncatedCoalgebra &target)
{
	for (const auto &[k, fk] : f.components)
	{
		if (fk.arity() != k)
			throw InputError("morphism component f" + std::to_string(k) + " has arity " + std::to_string(fk.arity()));
		if (fk.degree() != 0)
			throw InputError("morphism component f" + std::to_string(k) + " must have degree 0 on the shifted spaces");
		if (!(fk.domain() == source.letters()) || !(fk.codomain() == target.letters()))
			throw InputError("morphism component f" + std::to_string(k) + " is not defined on A[1] -> B[1]");
	}
	if (target.max_length() < source.max_length())
		throw InputError("lift_morphism: target carrier shorter than source carrier");

	SparseMatrix out(target.dim(), source.dim());
	for (std::size_t idx = 0; idx < source.dim(); ++idx)
	{
		Word w = source.word(idx);
		SparseVector column;
		// partial results: target word so far -> coefficient
		std::function<void(std::size_t, Word &, const Scalar &)> expand = [&](std::size_t pos, Word &acc,
		                                                                      const Scalar &coeff) {
			if (pos == w.size())
			{
				add_entry(column, target.index(acc), coeff);
				return;
			}
			for (const auto &[k, fk] : f.components)
			{
				if (pos + k > w.size())
					break;
				SparseVector image = fk.apply(Tuple(w.begin() + pos, w.begin() + pos + k));
				for (const auto &[o, c] : image)
				{
					acc.push_back(o);
					expand(pos + k, acc, coeff * c);
					acc.pop_back();
				}
			}
		};
		Word acc;
		expand(0, acc, Scalar(1));
		out.set_column(idx, std::move(column));
	}
	return out;
}

MorphismReport morphism_check(const MorphismData &f, const AlgebraPresentation &a, const AlgebraPresentation &b,
                              std::size_t L)
{
	Coderivation da(a.shifted_components(), TruncatedCoalgebra(shift(a.space, 1), L));
	Coderivation db(b.shifted_components(), TruncatedCoalgebra(shift(b.space, 1), L));
	SparseMatrix F = lift_morphism(f, da.carrier(), db.carrier());
	SparseMatrix lhs = F * da.matrix();
	SparseMatrix rhs = db.matrix() * F;
	MorphismReport r;
	r.commutes = lhs == rhs;
	if (!r.commutes)
		for (std::size_t c = 0; c < lhs.cols(); ++c)
			if (lhs.column(c) != rhs.column(c))
			{
				r.witness = da.carrier().word(c);
				break;
			}
	return r;
}

MorphismReport quasi_iso_check(const MorphismData &f, const AlgebraPresentation &a, const AlgebraPresentation &b,
                               unsigned N, std::size_t L)
{
	MorphismReport r = morphism_check(f, a, b, L);
	SparseMatrix d_a = differential_matrix(a);
	SparseMatrix d_b = differential_matrix(b);
	r.source_cohomology = kapranov_cohomology(d_a, N);
	r.target_cohomology = kapranov_cohomology(d_b, N);
	SparseMatrix f1(b.space.dim(), a.space.dim());
	if (auto it = f.components.find(1); it != f.components.end())
		f1 = it->second.matrix();

	r.quasi_iso = r.commutes;
	for (unsigned p = 1; p < N; ++p)
	{
		auto kernel = rank_kernel(d_a.power(p)).kernel;
		SparseMatrix image_b = d_b.power(N - p);
		std::vector<SparseVector> mapped;
		for (const auto &v : kernel)
			mapped.push_back(f1.apply(v));
		SparseMatrix stacked = hstack(SparseMatrix::from_columns(b.space.dim(), mapped), image_b);
		std::size_t induced = rank(stacked) - rank(image_b);
		r.induced_rank.push_back(induced);
		bool iso = induced == r.source_cohomology[p - 1] && induced == r.target_cohomology[p - 1];
		if (!iso && !r.failing_p)
			r.failing_p = p;
		r.quasi_iso = r.quasi_iso && iso;
	}
	return r;
}

namespace {

// Bracketings of letters [i, j), fully parenthesized.
std::vector<std::string> bracketings(std::size_t i, std::size_t j)
{
	if (j - i == 1)
		return {std::string(1, static_cast<char>('a' + i))};
	std::vector<std::string> out;
	for (std::size_t k = i + 1; k < j; ++k)
		for (const auto &l : bracketings(i, k))
			for (const auto &r : bracketings(k, j))
				out.push_back("(" + l + r + ")");
	return out;
}

std::string strip_outer(const std::string &s)
{
	return s.size() > 1 && s.front() == '(' ? s.substr(1, s.size() - 2) : s;
}

} // namespace

std::vector<IdentityTerm> nassociative_identity(unsigned N)
{
	if (N < 1 || N > 25)
		throw InputError("nassociative_identity: N out of range");
	const std::size_t n = N + 1;
	std::vector<BasisElement> basis;
	std::map<std::string, std::pair<std::size_t, std::size_t>> span;
	for (std::size_t len = 1; len <= n; ++len)
		for (std::size_t i = 0; i + len <= n; ++i)
			for (const auto &b : bracketings(i, i + len))
			{
				basis.push_back({b, 0});
				span[b] = {i, i + len};
			}
	GradedSpace magma(basis);
	GradedMultiMap m(magma, 2, magma, 0);
	for (std::size_t p = 0; p < magma.dim(); ++p)
		for (std::size_t q = 0; q < magma.dim(); ++q)
		{
			auto [pi, pj] = span[magma.name(p)];
			auto [qi, qj] = span[magma.name(q)];
			if (pj == qi)
				m.add(Tuple{p, q}, magma.require_index("(" + magma.name(p) + magma.name(q) + ")"), 1);
		}

	Coderivation delta({{2, to_shifted(m)}}, TruncatedCoalgebra(shift(magma, 1), n));
	Word letters(n);
	for (std::size_t i = 0; i < n; ++i)
		letters[i] = i; // single letters come first in the basis
	SparseVector v{{delta.carrier().index(letters), Scalar(1)}};
	for (unsigned k = 0; k < N; ++k)
		v = delta.apply(v);

	std::vector<IdentityTerm> terms;
	for (const auto &[idx, c] : v)
		terms.push_back({strip_outer(magma.name(delta.carrier().word(idx).front())), c});
	return terms;
}

} // namespace ndepth
