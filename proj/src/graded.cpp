#include "ndepth/graded.hpp"

#include "ndepth/error.hpp"

#include <numeric>
#include <stdexcept>

namespace ndepth {

GradedSpace::GradedSpace(std::vector<BasisElement> basis) : basis_(std::move(basis))
{
	for (std::size_t i = 0; i < basis_.size(); ++i)
		if (!index_.emplace(basis_[i].name, i).second)
			throw InputError("duplicate basis name '" + basis_[i].name + "'");
}

std::optional<std::size_t> GradedSpace::index_of(const std::string &name) const
{
	auto it = index_.find(name);
	if (it == index_.end())
		return std::nullopt;
	return it->second;
}

std::size_t GradedSpace::require_index(const std::string &name) const
{
	if (auto i = index_of(name))
		return *i;
	throw InputError("unknown basis name '" + name + "'");
}

GradedSpace ShiftedSpace::materialize() const
{
	std::vector<BasisElement> b = base_.basis();
	for (auto &e : b)
		e.degree -= shift_;
	return GradedSpace(std::move(b));
}

ShiftedSpace shift(const GradedSpace &v, int k) { return ShiftedSpace(v, k); }
ShiftedSpace shift(const ShiftedSpace &v, int k) { return ShiftedSpace(v.base(), v.shift() + k); }

int koszul_sign(std::span<const int> degrees_moved_past, int degree_moving)
{
	long total = std::accumulate(degrees_moved_past.begin(), degrees_moved_past.end(), 0L);
	return ((total * degree_moving) % 2 == 0) ? 1 : -1;
}

int koszul_sign(int degree_moved_past, int degree_moving)
{
	return ((static_cast<long>(degree_moved_past) * degree_moving) % 2 == 0) ? 1 : -1;
}

long superdimension(const GradedSpace &v)
{
	long s = 0;
	for (const auto &e : v.basis())
		s += (e.degree % 2 == 0) ? 1 : -1;
	return s;
}

GradedSpace direct_sum(const GradedSpace &a, const GradedSpace &b)
{
	std::vector<BasisElement> basis = a.basis();
	basis.insert(basis.end(), b.basis().begin(), b.basis().end());
	return GradedSpace(std::move(basis));
}

GradedSpace tensor_product(const GradedSpace &a, const GradedSpace &b)
{
	std::vector<BasisElement> basis;
	basis.reserve(a.dim() * b.dim());
	for (const auto &x : a.basis())
		for (const auto &y : b.basis())
			basis.push_back({x.name + "|" + y.name, x.degree + y.degree});
	return GradedSpace(std::move(basis));
}

std::size_t int_pow(std::size_t base, std::size_t exp)
{
	std::size_t r = 1;
	for (std::size_t i = 0; i < exp; ++i)
		r *= base;
	return r;
}

std::vector<Tuple> all_tuples(std::size_t n, std::size_t k)
{
	std::vector<Tuple> out;
	if (n == 0 && k > 0)
		return out;
	out.reserve(int_pow(n, k));
	Tuple t(k, 0);
	while (true)
	{
		out.push_back(t);
		std::size_t pos = k;
		while (pos > 0)
		{
			--pos;
			if (++t[pos] < n)
				break;
			t[pos] = 0;
			if (pos == 0)
				return out;
		}
		if (k == 0)
			return out;
	}
}

GradedMultiMap::GradedMultiMap(GradedSpace domain, std::size_t arity, GradedSpace codomain, int degree)
    : domain_(std::move(domain)), arity_(arity), codomain_(std::move(codomain)), degree_(degree)
{
	if (arity_ == 0)
		throw std::invalid_argument("GradedMultiMap: arity must be >= 1");
}

int GradedMultiMap::input_degree(const Tuple &in) const
{
	int d = 0;
	for (auto i : in)
		d += domain_.degree(i);
	return d;
}

void GradedMultiMap::add(const Tuple &in, std::size_t out, const Scalar &c)
{
	if (in.size() != arity_)
		throw InputError("structure constant has " + std::to_string(in.size()) + " inputs, map has arity " +
		                 std::to_string(arity_));
	for (auto i : in)
		if (i >= domain_.dim())
			throw std::out_of_range("GradedMultiMap::add: input index out of range");
	if (out >= codomain_.dim())
		throw std::out_of_range("GradedMultiMap::add: output index out of range");
	if (c == 0)
		return;
	int expected = input_degree(in) + degree_;
	if (codomain_.degree(out) != expected)
	{
		std::string ins;
		for (auto i : in)
			ins += (ins.empty() ? "" : ",") + domain_.name(i) + ":" + std::to_string(domain_.degree(i));
		throw InputError("degree-inhomogeneous coefficient: (" + ins + ") -> " + codomain_.name(out) + ":" +
		                 std::to_string(codomain_.degree(out)) + ", but inputs sum to " +
		                 std::to_string(input_degree(in)) + " and the map has degree " + std::to_string(degree_) +
		                 " so the output must have degree " + std::to_string(expected));
	}
	auto &vec = entries_[in];
	add_entry(vec, out, c);
	if (vec.empty())
		entries_.erase(in);
}

void GradedMultiMap::add(const std::vector<std::string> &in, const std::string &out, const Scalar &c)
{
	Tuple t;
	for (const auto &n : in)
		t.push_back(domain_.require_index(n));
	add(t, codomain_.require_index(out), c);
}

SparseVector GradedMultiMap::apply(const Tuple &in) const
{
	auto it = entries_.find(in);
	return it == entries_.end() ? SparseVector{} : it->second;
}

SparseVector GradedMultiMap::apply(const std::vector<SparseVector> &args) const
{
	if (args.size() != arity_)
		throw std::invalid_argument("GradedMultiMap::apply: wrong number of arguments");
	SparseVector out;
	// iterate over the cartesian product of supports
	std::vector<SparseVector::const_iterator> its;
	for (const auto &a : args)
	{
		if (a.empty())
			return out;
		its.push_back(a.begin());
	}
	Tuple t(arity_);
	while (true)
	{
		Scalar coeff = 1;
		for (std::size_t j = 0; j < arity_; ++j)
		{
			t[j] = its[j]->first;
			coeff *= its[j]->second;
		}
		if (auto e = entries_.find(t); e != entries_.end())
			add_scaled(out, e->second, coeff);
		std::size_t pos = arity_;
		while (pos > 0)
		{
			--pos;
			if (++its[pos] != args[pos].end())
				break;
			its[pos] = args[pos].begin();
			if (pos == 0)
				return out;
		}
	}
}

std::size_t GradedMultiMap::column_index(const Tuple &in) const
{
	std::size_t idx = 0;
	for (auto i : in)
		idx = idx * domain_.dim() + i;
	return idx;
}

Tuple GradedMultiMap::tuple_of(std::size_t column) const
{
	Tuple t(arity_);
	for (std::size_t j = arity_; j > 0; --j)
	{
		t[j - 1] = column % domain_.dim();
		column /= domain_.dim();
	}
	return t;
}

SparseMatrix GradedMultiMap::matrix() const
{
	SparseMatrix m(codomain_.dim(), int_pow(domain_.dim(), arity_));
	for (const auto &[in, vec] : entries_)
		m.set_column(column_index(in), vec);
	return m;
}

GradedMultiMap GradedMultiMap::from_matrix(const GradedSpace &domain, std::size_t arity, const GradedSpace &codomain,
                                           int degree, const SparseMatrix &m)
{
	GradedMultiMap f(domain, arity, codomain, degree);
	if (m.rows() != codomain.dim() || m.cols() != int_pow(domain.dim(), arity))
		throw std::invalid_argument("GradedMultiMap::from_matrix: shape mismatch");
	for (std::size_t c = 0; c < m.cols(); ++c)
		for (const auto &[r, v] : m.column(c))
			f.add(f.tuple_of(c), r, v);
	return f;
}

bool operator==(const GradedMultiMap &a, const GradedMultiMap &b)
{
	return a.arity_ == b.arity_ && a.degree_ == b.degree_ && a.domain_ == b.domain_ && a.codomain_ == b.codomain_ &&
	       a.entries_ == b.entries_;
}

namespace {

// Sign of (s^{-1})^{(x)k} acting on s a_1 (x) ... (x) s a_k: the j-th copy of
// s^{-1} (degree +1) moves past s a_1 ... s a_{j-1}.
int desuspension_sign(const GradedSpace &shifted_domain, const Tuple &in)
{
	long exponent = 0;
	long prefix = 0;
	for (auto i : in)
	{
		exponent += prefix;
		prefix += shifted_domain.degree(i);
	}
	return (exponent % 2 == 0) ? 1 : -1;
}

GradedSpace shifted_by_one(const GradedSpace &v) { return shift(v, 1).materialize(); }

} // namespace

GradedMultiMap to_shifted(const GradedMultiMap &f)
{
	GradedSpace dom = shifted_by_one(f.domain());
	GradedSpace cod = shifted_by_one(f.codomain());
	GradedMultiMap out(dom, f.arity(), cod, f.degree() + static_cast<int>(f.arity()) - 1);
	for (const auto &[in, vec] : f.entries())
	{
		int sign = desuspension_sign(dom, in);
		for (const auto &[o, c] : vec)
			out.add(in, o, sign * c);
	}
	return out;
}

GradedMultiMap to_unshifted(const GradedMultiMap &f_shifted, const GradedSpace &unshifted_domain,
                            const GradedSpace &unshifted_codomain)
{
	GradedMultiMap out(unshifted_domain, f_shifted.arity(), unshifted_codomain,
	                   f_shifted.degree() - static_cast<int>(f_shifted.arity()) + 1);
	for (const auto &[in, vec] : f_shifted.entries())
	{
		int sign = desuspension_sign(f_shifted.domain(), in);
		for (const auto &[o, c] : vec)
			out.add(in, o, sign * c);
	}
	return out;
}

} // namespace ndepth
