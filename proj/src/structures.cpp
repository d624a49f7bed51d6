#include "ndepth/structures.hpp"

#include "ndepth/error.hpp"

#include <algorithm>
#include <tuple>

namespace ndepth {

namespace {

const std::map<StructureKind, std::string> kind_names{
    {StructureKind::ncomplex, "ncomplex"},         {StructureKind::ndga, "ndga"},
    {StructureKind::ndgla, "ndgla"},               {StructureKind::nassociative, "nassociative"},
    {StructureKind::depthN, "depthN"},             {StructureKind::ainfN, "ainfN"},
    {StructureKind::ncgc, "ncgc"}};

void check_map(const GradedMultiMap &f, const GradedSpace &space, std::size_t arity, int degree,
               const std::string &label)
{
	if (f.arity() != arity)
		throw InputError(label + ": expected arity " + std::to_string(arity) + ", got " + std::to_string(f.arity()));
	if (f.degree() != degree)
		throw InputError(label + ": expected degree " + std::to_string(degree) + ", got " +
		                 std::to_string(f.degree()));
	if (!(f.domain() == space) || !(f.codomain() == space))
		throw InputError(label + ": not defined on the presentation's space");
}

SparseVector unit(std::size_t i) { return SparseVector{{i, Scalar(1)}}; }

SparseVector apply1(const GradedMultiMap &f, const SparseVector &v) { return f.apply(std::vector<SparseVector>{v}); }

SparseVector apply2(const GradedMultiMap &f, const SparseVector &u, const SparseVector &v)
{
	return f.apply(std::vector<SparseVector>{u, v});
}

SparseVector difference(SparseVector a, const SparseVector &b)
{
	add_scaled(a, b, Scalar(-1));
	return a;
}

// Records the first tuple (lexicographic) on which `eval` is nonzero.
template <class Eval>
AxiomVerdict check_all(const std::string &name, std::size_t dim, std::size_t arity, Eval eval)
{
	AxiomVerdict v{name, true, std::nullopt, {}};
	for (const auto &t : all_tuples(dim, arity))
	{
		SparseVector r = eval(t);
		if (!r.empty())
		{
			v.holds = false;
			v.witness = t;
			v.residual = std::move(r);
			break;
		}
	}
	return v;
}

AxiomVerdict power_vanishes(const std::string &name, const SparseMatrix &d, unsigned N)
{
	SparseMatrix dn = d.power(N);
	AxiomVerdict v{name, true, std::nullopt, {}};
	for (std::size_t c = 0; c < dn.cols(); ++c)
		if (!dn.column(c).empty())
		{
			v.holds = false;
			v.witness = Tuple{c};
			v.residual = dn.column(c);
			break;
		}
	return v;
}

void set_properness(ValidationReport &r, const SparseMatrix &d, unsigned N, const GradedSpace &space)
{
	SparseMatrix below = d.power(N - 1);
	r.proper = !below.is_zero();
	if (*r.proper)
		for (std::size_t c = 0; c < below.cols(); ++c)
			if (!below.column(c).empty())
			{
				r.proper_detail = "d^" + std::to_string(N - 1) + "(" + space.name(c) + ") != 0";
				break;
			}
	if (!*r.proper)
		r.proper_detail = "d^" + std::to_string(N - 1) + " = 0";
}

AxiomVerdict corestriction_axiom(const CorestrictionReport &cr)
{
	AxiomVerdict v{"corestriction delta^" + std::to_string(cr.N) + " = 0", true, std::nullopt, {}};
	for (const auto &e : cr.per_length)
		if (!e.vanishes)
		{
			v.holds = false;
			v.witness = *e.witness;
			std::size_t col = 0, radix = e.matrix_route.rows();
			for (auto letter : *e.witness)
				col = col * radix + letter;
			v.residual = e.matrix_route.column(col);
			break;
		}
	return v;
}

// Properness of a coderivation: some corestriction of delta^{N-1} is nonzero.
void set_coderivation_properness(ValidationReport &r, const Coderivation &delta, unsigned N, std::size_t l_max)
{
	r.proper = false;
	r.proper_detail = "corestriction of delta^" + std::to_string(N - 1) + " vanishes up to length " +
	                  std::to_string(l_max);
	for (std::size_t l = 1; l <= l_max; ++l)
	{
		SparseMatrix block = power_component(delta, N - 1, l, 1);
		for (std::size_t c = 0; c < block.cols(); ++c)
			if (!block.column(c).empty())
			{
				r.proper = true;
				Word w = delta.carrier().word(delta.carrier().offset(l) + c);
				std::string text;
				for (auto letter : w)
					text += (text.empty() ? "" : ",") + delta.carrier().letters().name(letter);
				r.proper_detail = "corestriction of delta^" + std::to_string(N - 1) + " nonzero on (" + text + ")";
				return;
			}
	}
}

void require_N(unsigned N)
{
	if (N < 1)
		throw InputError("N must be at least 1");
}

} // namespace

std::string to_string(StructureKind kind) { return kind_names.at(kind); }

StructureKind parse_kind(const std::string &text)
{
	for (const auto &[k, name] : kind_names)
		if (name == text)
			return k;
	throw InputError("unknown structure kind '" + text + "'");
}

void AlgebraPresentation::check_signature() const
{
	if (declared_N < 1)
		throw InputError("declared N must be at least 1");
	if (mult)
		check_map(*mult, space, 2, 0, "mult");
	if (diff)
		check_map(*diff, space, 1, 1, "diff");
	if (bracket)
		check_map(*bracket, space, 2, 0, "bracket");
	for (const auto &[k, f] : higher)
	{
		if (k < 1)
			throw InputError("higher operation of arity 0");
		check_map(f, space, k, 2 - static_cast<int>(k), "m" + std::to_string(k));
	}
	if (diff && higher.count(1))
		throw InputError("both diff and m1 given");
	if (mult && higher.count(2))
		throw InputError("both mult and m2 given");

	auto need = [&](bool present, const char *what) {
		if (!present)
			throw InputError(to_string(declared_kind) + " requires " + what);
	};
	switch (declared_kind)
	{
	case StructureKind::ncomplex:
	case StructureKind::ncgc:
		need(diff.has_value() || higher.count(1), "a differential");
		break;
	case StructureKind::ndga:
		need(mult.has_value() && diff.has_value(), "mult and diff");
		break;
	case StructureKind::ndgla:
		need(bracket.has_value() && diff.has_value(), "bracket and diff");
		break;
	case StructureKind::nassociative:
		need(mult.has_value() || higher.count(2), "mult");
		break;
	case StructureKind::depthN:
		need(mult.has_value() || diff.has_value() || !higher.empty(), "m1 or m2");
		for (const auto &[k, f] : higher)
			if (k > 2)
				throw InputError("depthN structures carry only m1 and m2, got m" + std::to_string(k));
		break;
	case StructureKind::ainfN:
		need(mult.has_value() || diff.has_value() || !higher.empty(), "at least one operation");
		break;
	}
}

std::map<std::size_t, GradedMultiMap> AlgebraPresentation::shifted_components() const
{
	std::map<std::size_t, GradedMultiMap> out;
	if (diff)
		out.emplace(1, to_shifted(*diff));
	if (mult)
		out.emplace(2, to_shifted(*mult));
	for (const auto &[k, f] : higher)
		out.emplace(k, to_shifted(f));
	return out;
}

bool ValidationReport::axioms_hold() const
{
	return std::all_of(axioms.begin(), axioms.end(), [](const auto &a) { return a.holds; });
}

bool ValidationReport::valid() const { return axioms_hold() && (!corestriction || corestriction->all_vanish()); }

const AxiomVerdict *ValidationReport::axiom(const std::string &name) const
{
	for (const auto &a : axioms)
		if (a.axiom == name)
			return &a;
	return nullptr;
}

ValidationReport validate_ncomplex(const AlgebraPresentation &p, unsigned N)
{
	require_N(N);
	const GradedMultiMap *d = p.diff ? &*p.diff : (p.higher.count(1) ? &p.higher.at(1) : nullptr);
	if (!d)
		throw InputError("ncomplex validation needs a differential");
	check_map(*d, p.space, 1, 1, "diff");
	ValidationReport r;
	r.kind = StructureKind::ncomplex;
	r.N = N;
	SparseMatrix dm = d->matrix();
	r.axioms.push_back(power_vanishes("d^" + std::to_string(N) + " = 0", dm, N));
	set_properness(r, dm, N, p.space);
	return r;
}

ValidationReport validate_ndga(const AlgebraPresentation &p, unsigned N)
{
	require_N(N);
	if (!p.mult || !p.diff)
		throw InputError("ndga validation needs mult and diff");
	const auto &m = *p.mult;
	const auto &d = *p.diff;
	check_map(m, p.space, 2, 0, "mult");
	check_map(d, p.space, 1, 1, "diff");
	const std::size_t n = p.space.dim();

	ValidationReport r;
	r.kind = StructureKind::ndga;
	r.N = N;
	r.axioms.push_back(check_all("associativity", n, 3, [&](const Tuple &t) {
		return difference(apply2(m, m.apply(Tuple{t[0], t[1]}), unit(t[2])),
		                  apply2(m, unit(t[0]), m.apply(Tuple{t[1], t[2]})));
	}));
	r.axioms.push_back(check_all("leibniz", n, 2, [&](const Tuple &t) {
		SparseVector lhs = apply1(d, m.apply(t));
		add_scaled(lhs, apply2(m, d.apply(Tuple{t[0]}), unit(t[1])), Scalar(-1));
		add_scaled(lhs, apply2(m, unit(t[0]), d.apply(Tuple{t[1]})), Scalar(-koszul_sign(p.space.degree(t[0]), 1)));
		return lhs;
	}));
	SparseMatrix dm = d.matrix();
	r.axioms.push_back(power_vanishes("d^" + std::to_string(N) + " = 0", dm, N));
	set_properness(r, dm, N, p.space);
	return r;
}

ValidationReport validate_ndgla(const AlgebraPresentation &p, unsigned N)
{
	require_N(N);
	if (!p.bracket || !p.diff)
		throw InputError("ndgla validation needs bracket and diff");
	const auto &b = *p.bracket;
	const auto &d = *p.diff;
	check_map(b, p.space, 2, 0, "bracket");
	check_map(d, p.space, 1, 1, "diff");
	const std::size_t n = p.space.dim();
	auto deg = [&](std::size_t i) { return p.space.degree(i); };

	ValidationReport r;
	r.kind = StructureKind::ndgla;
	r.N = N;
	r.axioms.push_back(check_all("antisymmetry", n, 2, [&](const Tuple &t) {
		SparseVector v = b.apply(t);
		add_scaled(v, b.apply(Tuple{t[1], t[0]}), Scalar(koszul_sign(deg(t[0]), deg(t[1]))));
		return v;
	}));
	r.axioms.push_back(check_all("jacobi", n, 3, [&](const Tuple &t) {
		auto [x, y, z] = std::tuple{t[0], t[1], t[2]};
		SparseVector v = scaled(apply2(b, unit(x), b.apply(Tuple{y, z})), Scalar(koszul_sign(deg(x), deg(z))));
		add_scaled(v, apply2(b, unit(y), b.apply(Tuple{z, x})), Scalar(koszul_sign(deg(y), deg(x))));
		add_scaled(v, apply2(b, unit(z), b.apply(Tuple{x, y})), Scalar(koszul_sign(deg(z), deg(y))));
		return v;
	}));
	r.axioms.push_back(check_all("leibniz", n, 2, [&](const Tuple &t) {
		SparseVector lhs = apply1(d, b.apply(t));
		add_scaled(lhs, apply2(b, d.apply(Tuple{t[0]}), unit(t[1])), Scalar(-1));
		add_scaled(lhs, apply2(b, unit(t[0]), d.apply(Tuple{t[1]})), Scalar(-koszul_sign(deg(t[0]), 1)));
		return lhs;
	}));
	SparseMatrix dm = d.matrix();
	r.axioms.push_back(power_vanishes("d^" + std::to_string(N) + " = 0", dm, N));
	set_properness(r, dm, N, p.space);
	return r;
}

ValidationReport validate_nassociative(const AlgebraPresentation &p, unsigned N, std::size_t truncation)
{
	require_N(N);
	const GradedMultiMap *m = p.mult ? &*p.mult : (p.higher.count(2) ? &p.higher.at(2) : nullptr);
	if (!m)
		throw InputError("nassociative validation needs mult");
	check_map(*m, p.space, 2, 0, "mult");

	ValidationReport r;
	r.kind = StructureKind::nassociative;
	r.N = N;
	const std::size_t L = std::max<std::size_t>(truncation, N + 2);
	Coderivation delta({{2, to_shifted(*m)}}, TruncatedCoalgebra(shift(p.space, 1), L));
	r.corestriction = corestriction_identities(delta, N, N + 1);
	r.axioms.push_back(corestriction_axiom(*r.corestriction));
	r.strict = strict_nilpotency(delta, N);
	set_coderivation_properness(r, delta, N, N);
	return r;
}

ValidationReport validate_ainfN(const AlgebraPresentation &p, unsigned N, std::size_t L, CarrierMode mode)
{
	require_N(N);
	auto comps = p.shifted_components();
	if (comps.empty())
		throw InputError("ainfN validation needs at least one operation m_k");
	for (const auto &[k, f] : comps)
	{
		if (k > L)
			throw InputError("m" + std::to_string(k) + " exceeds the truncation length " + std::to_string(L));
		if (mode == CarrierMode::two_truncated && k > 2)
			throw InputError("two-truncated mode accepts only m1 and m2, got m" + std::to_string(k));
	}

	ValidationReport r;
	r.kind = mode == CarrierMode::two_truncated ? StructureKind::depthN : StructureKind::ainfN;
	r.N = N;
	if (mode == CarrierMode::full)
	{
		Coderivation delta(comps, TruncatedCoalgebra(shift(p.space, 1), L));
		r.strict = strict_nilpotency(delta, N);
		r.corestriction = corestriction_identities(delta, N, L);
		set_coderivation_properness(r, delta, N, L);
	}
	else
	{
		Coderivation small(comps, TruncatedCoalgebra(shift(p.space, 1), 2, CarrierMode::two_truncated));
		r.strict = strict_nilpotency(small, N);
		Coderivation full(comps, TruncatedCoalgebra(shift(p.space, 1), N + 1));
		r.corestriction = corestriction_identities(full, N, N + 1);
		set_coderivation_properness(r, full, N, N + 1);
	}
	r.axioms.push_back(corestriction_axiom(*r.corestriction));
	return r;
}

} // namespace ndepth
