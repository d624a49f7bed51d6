#include "ndepth/deformation.hpp"

#include "ndepth/error.hpp"

#include <algorithm>

namespace ndepth {

CochainSpace::CochainSpace(GradedSpace space, std::size_t min_arity, std::size_t max_arity, std::optional<int> degree)
    : space_(std::move(space)), shifted_(shift(space_, 1)), min_arity_(min_arity), max_arity_(max_arity),
      degree_(degree)
{
	if (min_arity < 1 || min_arity > max_arity)
		throw InputError("cochain arities must satisfy 1 <= min <= max");
	for (std::size_t n = min_arity; n <= max_arity; ++n)
		for (const auto &t : all_tuples(space_.dim(), n))
		{
			int in = 0;
			for (auto i : t)
				in += shifted_.degree(i);
			for (std::size_t o = 0; o < space_.dim(); ++o)
			{
				if (degree && shifted_.degree(o) - in != *degree)
					continue;
				index_[{t, o}] = basis_.size();
				basis_.push_back({t, o});
			}
		}
}

int CochainSpace::degree_of(std::size_t i) const
{
	const Element &e = basis_.at(i);
	int d = shifted_.degree(e.output);
	for (auto x : e.inputs)
		d -= shifted_.degree(x);
	return d;
}

std::optional<std::size_t> CochainSpace::index(const std::vector<std::size_t> &inputs, std::size_t output) const
{
	auto it = index_.find({inputs, output});
	if (it == index_.end())
		return std::nullopt;
	return it->second;
}

GradedMultiMap CochainSpace::elementary(std::size_t i) const
{
	const Element &e = basis_.at(i);
	GradedSpace letters = shifted_.materialize();
	GradedMultiMap f(letters, e.inputs.size(), letters, degree_of(i));
	f.add(e.inputs, e.output, 1);
	return f;
}

SparseMatrix CochainSpace::lift(const SparseVector &v, const TruncatedCoalgebra &carrier) const
{
	SparseMatrix total(carrier.dim(), carrier.dim());
	for (const auto &[i, c] : v)
	{
		if (basis_.at(i).inputs.size() > carrier.max_length())
			continue;
		GradedMultiMap f = elementary(i);
		total = total + c * lift_to_carrier({{f.arity(), f}}, carrier);
	}
	return total;
}

SparseVector CochainSpace::coordinates(const GradedMultiMap &shifted_map) const
{
	SparseVector v;
	for (const auto &[t, out] : shifted_map.entries())
		for (const auto &[o, c] : out)
		{
			auto idx = index(t, o);
			if (!idx)
				throw InputError("cochain entry outside the cochain space (arity " + std::to_string(t.size()) + ")");
			add_entry(v, *idx, c);
		}
	return v;
}

SparseVector CochainSpace::corestriction(const SparseMatrix &op, const TruncatedCoalgebra &carrier) const
{
	SparseVector v;
	for (std::size_t i = 0; i < basis_.size(); ++i)
	{
		const Element &e = basis_[i];
		if (e.inputs.size() > carrier.max_length())
			continue;
		Scalar c = op.get(carrier.index({e.output}), carrier.index(e.inputs));
		if (c != 0)
			v[i] = c;
	}
	return v;
}

std::string CochainSpace::describe(std::size_t i) const
{
	const Element &e = basis_.at(i);
	std::string out = "m" + std::to_string(e.inputs.size()) + "(";
	for (std::size_t j = 0; j < e.inputs.size(); ++j)
		out += (j ? "," : "") + space_.name(e.inputs[j]);
	return out + ") -> " + space_.name(e.output);
}

Coderivation strict_codifferential(const AlgebraPresentation &a, unsigned N, std::size_t L)
{
	Coderivation delta(a.shifted_components(), TruncatedCoalgebra(shift(a.space, 1), L));
	if (!delta.matrix().power(N).is_zero())
		throw PreconditionError("delta^" + std::to_string(N) + " != 0 on T^{<=" + std::to_string(L) +
		                        "}(A[1]); deformation computations need strict nilpotency");
	return delta;
}

SparseVector flatten(const SparseMatrix &op)
{
	SparseVector v;
	for (std::size_t c = 0; c < op.cols(); ++c)
		for (const auto &[r, x] : op.column(c))
			v[c * op.rows() + r] = x;
	return v;
}

namespace {

int sign(int exponent) { return exponent % 2 ? -1 : 1; }

struct Context
{
	Coderivation delta;
	unsigned N;
	std::vector<SparseMatrix> powers; // powers[i] = delta^i, zero from N on

	Context(const DeformationProblem &p, std::size_t L, unsigned k_max)
	    : delta(strict_codifferential(p.algebra, p.N, L)), N(p.N)
	{
		powers.push_back(SparseMatrix::identity(delta.carrier().dim()));
		for (unsigned i = 1; i <= std::min(k_max, N - 1); ++i)
			powers.push_back(delta.matrix() * powers.back());
	}

	const TruncatedCoalgebra &carrier() const { return delta.carrier(); }

	SparseMatrix t(unsigned k, const SparseMatrix &F, int degree) const
	{
		if (k == 1)
			return delta.matrix() * F - Scalar(sign(degree)) * (F * delta.matrix());
		SparseMatrix total(F.rows(), F.cols());
		for (unsigned i = 0; i < k; ++i)
			if (i < N && k - 1 - i < N)
				total = total + (powers[i] * F) * powers[k - 1 - i];
		return total;
	}
};

SparseMatrix t_columns(const Context &ctx, unsigned k, const CochainSpace &source)
{
	const std::size_t dim = ctx.carrier().dim();
	std::vector<SparseVector> cols;
	for (std::size_t i = 0; i < source.dim(); ++i)
		cols.push_back(flatten(ctx.t(k, source.lift({{i, Scalar(1)}}, ctx.carrier()), source.degree_of(i))));
	return SparseMatrix::from_columns(dim * dim, cols);
}

SparseMatrix commutator_columns(const Context &ctx, const CochainSpace &source, const CochainSpace &target)
{
	std::vector<SparseVector> cols;
	for (std::size_t i = 0; i < source.dim(); ++i)
	{
		SparseMatrix op = ctx.t(1, source.lift({{i, Scalar(1)}}, ctx.carrier()), source.degree_of(i));
		cols.push_back(target.corestriction(op, ctx.carrier()));
	}
	return SparseMatrix::from_columns(target.dim(), cols);
}

std::vector<SparseVector> columns(const SparseMatrix &m)
{
	std::vector<SparseVector> out;
	for (std::size_t c = 0; c < m.cols(); ++c)
		out.push_back(m.column(c));
	return out;
}

} // namespace

SparseMatrix t_operator(const DeformationProblem &p, unsigned k, const CochainSpace &source)
{
	if (k < 1)
		throw InputError("t_k needs k >= 1");
	for (std::size_t i = 0; i < source.dim(); ++i)
		if (source.element(i).inputs.size() > p.carrier_length())
			throw InputError("cochain arity " + std::to_string(source.element(i).inputs.size()) +
			                 " exceeds the truncation " + std::to_string(p.carrier_length()));
	Context ctx(p, p.carrier_length(), k);
	return t_columns(ctx, k, source);
}

SparseMatrix commutator_cochains(const DeformationProblem &p, const CochainSpace &source, const CochainSpace &target)
{
	Context ctx(p, p.carrier_length(), 1);
	return commutator_columns(ctx, source, target);
}

std::size_t DeformationProblem::stable_length() const
{
	std::size_t r = 2;
	for (const auto &[k, f] : algebra.shifted_components())
		r = std::max(r, k);
	return r * (M + 1);
}

std::size_t DeformationProblem::carrier_length() const
{
	if (truncation)
		return truncation;
	const auto &basis = algebra.space.basis();
	if (std::any_of(basis.begin(), basis.end(), [](const BasisElement &b) { return b.degree != 0; }))
		return M + 1;
	return stable_length();
}

CochainSpace cochains_of_degree(const DeformationProblem &p, int degree)
{
	std::size_t top = std::min<std::size_t>(p.M + 1, p.carrier_length());
	if (degree == 0)
	{
		// t_1 raises arity by up to r - 1
		std::size_t r = 1;
		for (const auto &[k, f] : p.algebra.shifted_components())
			r = std::max(r, k);
		top = top >= r ? top - (r - 1) : 1;
	}
	return CochainSpace(p.algebra.space, 1, top, degree);
}

CohomologyReport cohomology_HNM(const DeformationProblem &p)
{
	if (p.M < p.N)
		throw InputError("H_{N,M} needs M >= N");
	Context ctx(p, p.carrier_length(), p.M);
	CochainSpace c1 = cochains_of_degree(p, 0), c2 = cochains_of_degree(p, 1);
	SparseMatrix tM = t_columns(ctx, p.M, c2);
	SparseMatrix t1 = commutator_columns(ctx, c1, c2);
	if (!(tM * t1).is_zero())
		throw PreconditionError("t_" + std::to_string(p.M) + " t_1 != 0; the structure is not strictly " +
		                        std::to_string(p.N) + "-nilpotent where it matters");
	CohomologyReport r;
	r.N = p.N;
	r.M = p.M;
	r.truncation = p.carrier_length();
	r.dim_c1 = c1.dim();
	r.dim_c2 = c2.dim();
	r.dim_ker_tM = c2.dim() - rank(tM);
	r.dim_im_t1 = rank(t1);
	r.dim_H = subquotient_dim(tM, t1);
	return r;
}

std::vector<TelescopeReport> telescoping(const DeformationProblem &p, unsigned k_max)
{
	Context ctx(p, p.carrier_length(), k_max);
	CochainSpace c1 = cochains_of_degree(p, 0), c2 = cochains_of_degree(p, 1);
	SparseMatrix t1 = commutator_columns(ctx, c1, c2);
	std::vector<TelescopeReport> out;
	for (unsigned k = p.N; k <= k_max; ++k)
		out.push_back({k, (t_columns(ctx, k, c2) * t1).is_zero()});
	return out;
}

InclusionReport kernel_inclusion(const DeformationProblem &p)
{
	Context ctx(p, p.carrier_length(), p.M + 1);
	CochainSpace c2 = cochains_of_degree(p, 1);
	SparseMatrix tM = t_columns(ctx, p.M, c2);
	SparseMatrix tM1 = t_columns(ctx, p.M + 1, c2);
	InclusionReport r;
	auto kernel = rank_kernel(tM).kernel;
	r.dim_ker_M = kernel.size();
	r.dim_ker_M1 = c2.dim() - rank(tM1);
	r.included = true;
	for (const auto &v : kernel)
		if (!tM1.apply(v).empty())
		{
			r.included = false;
			r.witness = v;
			break;
		}
	return r;
}

namespace {

bool is_plain_algebra(const AlgebraPresentation &a)
{
	bool degree_zero = std::all_of(a.space.basis().begin(), a.space.basis().end(),
	                               [](const BasisElement &b) { return b.degree == 0; });
	bool diff_zero = !a.diff || a.diff->is_zero();
	return degree_zero && a.mult && diff_zero && a.higher.empty() && !a.bracket;
}

// sum_i delta^i F delta^{k-1-i} applied to a vector, by repeated coderivation application
SparseVector t_apply(const Coderivation &delta, const Coderivation &F, unsigned k, const SparseVector &v)
{
	SparseVector total;
	for (unsigned i = 0; i < k; ++i)
	{
		SparseVector w = v;
		for (unsigned j = 0; j < k - 1 - i; ++j)
			w = delta.apply(w);
		w = F.apply(w);
		for (unsigned j = 0; j < i; ++j)
			w = delta.apply(w);
		add_scaled(total, w, 1);
	}
	return total;
}

} // namespace

CertificateCheck verify_certificate(const DeformationProblem &p, const SparseVector &f)
{
	const std::size_t L = p.carrier_length();
	Coderivation delta = strict_codifferential(p.algebra, p.N, L);
	CochainSpace c2 = cochains_of_degree(p, 1);
	GradedSpace letters = shift(p.algebra.space, 1).materialize();
	std::map<std::size_t, GradedMultiMap> family;
	for (const auto &[i, c] : f)
	{
		const auto &e = c2.element(i);
		auto it = family.try_emplace(e.inputs.size(), letters, e.inputs.size(), letters, 1).first;
		it->second.add(e.inputs, e.output, c);
	}
	Coderivation F(family, delta.carrier());

	CertificateCheck check;
	check.kernel_M = check.kernel_M_minus_1 = true;
	for (std::size_t w = 0; w < delta.carrier().dim(); ++w)
	{
		SparseVector v{{w, Scalar(1)}};
		if (!t_apply(delta, F, p.M, v).empty())
			check.kernel_M = false;
		if (!t_apply(delta, F, p.M - 1, v).empty())
			check.kernel_M_minus_1 = false;
	}

	if (is_plain_algebra(p.algebra) && p.N == 2 && p.M == 3)
	{
		const GradedSpace &A = p.algebra.space;
		const GradedMultiMap &m = *p.algebra.mult;
		GradedMultiMap fs(letters, 2, letters, 1);
		if (family.count(2))
			fs = family.at(2);
		GradedMultiMap fu = to_unshifted(fs, A, A);
		auto mul = [&](const SparseVector &x, const SparseVector &y) { return m.apply(std::vector<SparseVector>{x, y}); };
		auto fv = [&](const SparseVector &x, const SparseVector &y) { return fu.apply(std::vector<SparseVector>{x, y}); };
		auto basis = [](std::size_t i) { return SparseVector{{i, Scalar(1)}}; };
		check.identity_order_three = true;
		check.identity_order_two = true;
		for (const auto &t : all_tuples(A.dim(), 4))
		{
			auto a = basis(t[0]), b = basis(t[1]), c = basis(t[2]), d = basis(t[3]);
			SparseVector lhs = mul(fv(mul(a, b), c), d);
			add_scaled(lhs, mul(a, fv(mul(b, c), d)), 1);
			add_scaled(lhs, mul(mul(fv(a, b), c), d), 1);
			add_scaled(lhs, mul(mul(a, b), fv(c, d)), -1);
			add_scaled(lhs, mul(fv(a, mul(b, c)), d), -1);
			add_scaled(lhs, mul(a, fv(b, mul(c, d))), -1);
			if (!lhs.empty())
				check.identity_order_three = false;
		}
		for (const auto &t : all_tuples(A.dim(), 3))
		{
			auto a = basis(t[0]), b = basis(t[1]), c = basis(t[2]);
			SparseVector lhs = mul(fv(a, b), c);
			add_scaled(lhs, fv(mul(a, b), c), 1);
			add_scaled(lhs, mul(a, fv(b, c)), -1);
			add_scaled(lhs, fv(a, mul(b, c)), -1);
			if (!lhs.empty() && *check.identity_order_two)
			{
				check.identity_order_two = false;
				check.witness = std::vector<std::string>{A.name(t[0]), A.name(t[1]), A.name(t[2])};
			}
		}
	}
	return check;
}

ProperSearchResult proper_search(const DeformationProblem &p)
{
	if (p.M <= p.N)
		throw InputError("proper deformation search needs M > N");
	Context ctx(p, p.carrier_length(), p.M);
	CochainSpace c1 = cochains_of_degree(p, 0), c2 = cochains_of_degree(p, 1);
	SparseMatrix tM = t_columns(ctx, p.M, c2);
	SparseMatrix tM_1 = t_columns(ctx, p.M - 1, c2);
	SparseMatrix t1 = commutator_columns(ctx, c1, c2);
	ProperSearchResult r;
	auto kernel = rank_kernel(tM).kernel;
	auto lower = rank_kernel(tM_1).kernel;
	r.dim_ker_M = kernel.size();
	r.dim_ker_M_minus_1 = lower.size();
	r.dim_im_t1 = rank(t1);
	std::vector<SparseVector> span = lower;
	for (auto &col : columns(t1))
		span.push_back(std::move(col));
	EchelonBasis trivial;
	for (auto &v : span)
		trivial.insert(v);
	for (const auto &v : kernel)
		if (!trivial.contains(v))
		{
			r.certificate = v;
			r.check = verify_certificate(p, v);
			break;
		}
	return r;
}

FullCheckReport full_check(const DeformationProblem &p, const DeformationData &e)
{
	const unsigned order = std::max<unsigned>(p.base_power, static_cast<unsigned>(e.terms.size()));
	if (order < 2)
		throw InputError("deformations need k[h]/(h^p) with p >= 2");
	if (!e.terms.empty() && !e.terms[0].empty())
		throw PreconditionError("the deformation does not vanish modulo h");
	Context ctx(p, p.carrier_length(), p.M);
	CochainSpace c2 = cochains_of_degree(p, 1);
	const std::size_t dim = ctx.carrier().dim();

	HMatrix E = HMatrix::zero(dim, order);
	for (std::size_t j = 1; j < e.terms.size() && j < order; ++j)
		E.c[j] = c2.lift(e.terms[j], ctx.carrier());
	HMatrix step = HMatrix::constant(ctx.delta.matrix(), order) + E;
	HMatrix power = HMatrix::constant(SparseMatrix::identity(dim), order);
	for (unsigned i = 0; i < p.M; ++i)
		power = power * step;

	FullCheckReport r;
	r.residual = power;
	r.deformation = power.is_zero();
	SparseVector f1 = e.terms.size() > 1 ? e.terms[1] : SparseVector{};
	SparseMatrix tM = t_columns(ctx, p.M, c2);
	SparseVector first = tM.apply(f1);
	r.first_order_kernel = first.empty();
	r.matches_first_order = flatten(power.c[1]) == first;
	if (order >= 3)
	{
		MCResidual mc = mc_residual(ctx.delta, E, p.N, p.M);
		r.agrees_with_equation = mc.direct_value == power && mc.direct() == mc.via_equation();
	}
	return r;
}

} // namespace ndepth
