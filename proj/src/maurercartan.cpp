#include "ndepth/maurercartan.hpp"

#include "ndepth/error.hpp"

#include <algorithm>
#include <numeric>

namespace ndepth {

unsigned Composition::size() const { return std::accumulate(parts.begin(), parts.end(), 0u); }

unsigned Composition::prefix_size(std::size_t i) const
{
	return std::accumulate(parts.begin(), parts.begin() + static_cast<long>(i - 1), 0u);
}

Composition Composition::prefix(std::size_t i) const { return {{parts.begin(), parts.begin() + static_cast<long>(i - 1)}}; }

Composition Composition::suffix(std::size_t i) const
{
	return {{parts.begin() + static_cast<long>(std::min(i, parts.size())), parts.end()}};
}

std::string Composition::to_string() const
{
	std::string out = "(";
	for (std::size_t i = 0; i < parts.size(); ++i)
		out += (i ? "," : "") + std::to_string(parts[i]);
	return out + ")";
}

Scalar MCTable::coefficient(const Composition &s) const
{
	auto it = entries.find(s);
	return it == entries.end() ? Scalar(0) : it->second;
}

int MCTable::remaining(const Composition &s) const
{
	return static_cast<int>(M) - static_cast<int>(s.size()) - static_cast<int>(s.length());
}

namespace {

int sign(unsigned exponent) { return exponent % 2 ? -1 : 1; }

template <class Value, class Step>
std::map<Composition, Value> layered_paths(unsigned M, Step &&weight_of)
{
	std::map<Composition, Value> layer{{Composition{}, Value(1)}};
	for (unsigned step = 0; step < M; ++step)
	{
		std::map<Composition, Value> next;
		for (const auto &[s, w] : layer)
		{
			Composition pushed = s;
			pushed.parts.insert(pushed.parts.begin(), 0);
			next[pushed] += w;
			next[s] += weight_of(sign(s.size() + static_cast<unsigned>(s.length()))) * w;
			for (std::size_t i = 1; i <= s.length(); ++i)
			{
				Composition raised = s;
				++raised.parts[i - 1];
				next[raised] += weight_of(sign(s.prefix_size(i) + static_cast<unsigned>(i) - 1)) * w;
			}
		}
		layer = std::move(next);
	}
	return layer;
}

} // namespace

MCTable mc_coefficients(unsigned N, unsigned M)
{
	if (N < 1 || N > M || M > 8)
		throw InputError("mc_coefficients needs 1 <= N <= M <= 8");
	MCTable table;
	table.N = N;
	table.M = M;
	table.entries = layered_paths<Scalar>(M, [](int s) { return Scalar(s); });
	for (const auto &[s, c] : table.entries)
	{
		int k = table.remaining(s);
		if (c == 0 || s.length() == 0 || k >= static_cast<int>(M))
			continue;
		if (std::all_of(s.parts.begin(), s.parts.end(), [N](unsigned p) { return p < N; }))
			table.assembled[static_cast<unsigned>(k)].push_back({s, c});
	}
	return table;
}

std::map<Composition, long> mc_path_counts(unsigned M)
{
	return layered_paths<long>(M, [](int) { return 1L; });
}

NCPolynomial NCPolynomial::letter(unsigned N, char c)
{
	if (c != 'D' && c != 'e')
		throw InputError(std::string("unknown letter '") + c + "' (expected D or e)");
	NCPolynomial p(N);
	p.add(std::string(1, c), 1);
	return p;
}

NCPolynomial NCPolynomial::one(unsigned N)
{
	NCPolynomial p(N);
	p.add("", 1);
	return p;
}

void NCPolynomial::add(const std::string &word, const Scalar &c)
{
	if (c == 0 || word.find(std::string(N_, 'D')) != std::string::npos)
		return;
	auto &slot = terms_[word];
	slot += c;
	if (slot == 0)
		terms_.erase(word);
}

NCPolynomial NCPolynomial::operator+(const NCPolynomial &o) const
{
	NCPolynomial r = *this;
	for (const auto &[w, c] : o.terms_)
		r.add(w, c);
	return r;
}

NCPolynomial NCPolynomial::operator-(const NCPolynomial &o) const { return *this + Scalar(-1) * o; }

NCPolynomial NCPolynomial::operator*(const NCPolynomial &o) const
{
	NCPolynomial r(N_);
	for (const auto &[a, ca] : terms_)
		for (const auto &[b, cb] : o.terms_)
			r.add(a + b, ca * cb);
	return r;
}

NCPolynomial operator*(const Scalar &s, const NCPolynomial &p)
{
	NCPolynomial r(p.N_);
	for (const auto &[w, c] : p.terms_)
		r.add(w, s * c);
	return r;
}

NCPolynomial NCPolynomial::derivative() const
{
	NCPolynomial r(N_);
	for (const auto &[w, c] : terms_)
	{
		r.add("D" + w, c);
		r.add(w + "D", -sign(static_cast<unsigned>(w.size())) * c);
	}
	return r;
}

std::string NCPolynomial::to_string() const
{
	if (terms_.empty())
		return "0";
	std::string out;
	for (const auto &[w, c] : terms_)
	{
		std::string word = w.empty() ? "1" : w;
		if (out.empty())
			out = c == 1 ? word : c == -1 ? "-" + word : ndepth::to_string(c) + " " + word;
		else if (c > 0)
			out += c == 1 ? " + " + word : " + " + ndepth::to_string(c) + " " + word;
		else
			out += c == -1 ? " - " + word : " - " + ndepth::to_string(Scalar(-c)) + " " + word;
	}
	return out;
}

NCPolynomial expand_composition(const Composition &s, unsigned N)
{
	NCPolynomial r = NCPolynomial::one(N);
	for (unsigned a : s.parts)
	{
		NCPolynomial f = NCPolynomial::letter(N, 'e');
		for (unsigned i = 0; i < a; ++i)
			f = f.derivative();
		r = r * f;
	}
	return r;
}

NCOracleReport nc_oracle(unsigned N, unsigned M)
{
	if (N < 1 || N > 4 || M > 6 || N > M)
		throw InputError("nc_oracle needs 1 <= N <= 4, N <= M <= 6");
	NCOracleReport report;
	report.N = N;
	report.M = M;
	NCPolynomial step = NCPolynomial::letter(N, 'D') + NCPolynomial::letter(N, 'e');
	NCPolynomial lhs = NCPolynomial::one(N);
	for (unsigned i = 0; i < M; ++i)
		lhs = lhs * step;
	report.lhs = lhs;

	MCTable table = mc_coefficients(N, M);
	auto delta_power = [N](int k) {
		NCPolynomial p = NCPolynomial::one(N);
		for (int i = 0; i < k; ++i)
			p = p * NCPolynomial::letter(N, 'D');
		return p;
	};
	NCPolynomial rhs(N);
	for (const auto &[k, terms] : table.assembled)
		for (const auto &[s, c] : terms)
			rhs = rhs + c * (expand_composition(s, N) * delta_power(static_cast<int>(k)));
	NCPolynomial all(N);
	for (const auto &[s, c] : table.entries)
		all = all + c * (expand_composition(s, N) * delta_power(table.remaining(s)));
	report.rhs = rhs;
	report.rhs_all_parts = all;
	report.difference = lhs - rhs;
	return report;
}

HMatrix HMatrix::constant(const SparseMatrix &m, unsigned p)
{
	HMatrix r = zero(m.rows(), p);
	r.c[0] = m;
	return r;
}

HMatrix HMatrix::zero(std::size_t dim, unsigned p)
{
	if (p < 1)
		throw InputError("k[h]/(h^p) needs p >= 1");
	return HMatrix{std::vector<SparseMatrix>(p, SparseMatrix(dim, dim))};
}

bool HMatrix::is_zero() const
{
	return std::all_of(c.begin(), c.end(), [](const SparseMatrix &m) { return m.is_zero(); });
}

HMatrix HMatrix::operator+(const HMatrix &o) const
{
	HMatrix r = *this;
	for (std::size_t j = 0; j < c.size(); ++j)
		r.c[j] = c[j] + o.c.at(j);
	return r;
}

HMatrix HMatrix::operator-(const HMatrix &o) const { return *this + Scalar(-1) * o; }

HMatrix HMatrix::operator*(const HMatrix &o) const
{
	HMatrix r = zero(dim(), order());
	for (std::size_t i = 0; i < c.size(); ++i)
		for (std::size_t j = 0; i + j < c.size(); ++j)
			if (!c[i].is_zero() && !o.c.at(j).is_zero())
				r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
	return r;
}

HMatrix operator*(const Scalar &s, const HMatrix &m)
{
	HMatrix r = m;
	for (auto &x : r.c)
		x = s * x;
	return r;
}

MCResidual mc_residual(const Coderivation &delta, const HMatrix &e, unsigned N, unsigned M)
{
	const SparseMatrix &d = delta.matrix();
	if (e.c.empty() || e.dim() != d.rows())
		throw InputError("deformation and codifferential live on different carriers");
	if (!d.power(N).is_zero())
		throw PreconditionError("delta^" + std::to_string(N) + " != 0 on the carrier");
	if (!e.c[0].is_zero())
		throw PreconditionError("the deformation does not vanish modulo h");
	const unsigned p = e.order();
	HMatrix D = HMatrix::constant(d, p);

	MCResidual out;
	HMatrix sum = D + e, power = HMatrix::constant(SparseMatrix::identity(d.rows()), p);
	for (unsigned i = 0; i < M; ++i)
		power = power * sum;
	out.direct_value = power;

	MCTable table = mc_coefficients(N, M);
	std::map<unsigned, HMatrix> derived{{0, e}};
	auto derivative = [&](unsigned a) {
		for (unsigned i = 1; i <= a; ++i)
			if (!derived.count(i))
			{
				const HMatrix &f = derived.at(i - 1);
				// f = d^{i-1}(e) has degree i
				derived.emplace(i, D * f - Scalar(sign(i)) * (f * D));
			}
		return derived.at(a);
	};
	HMatrix total = HMatrix::zero(d.rows(), p);
	for (const auto &[k, terms] : table.assembled)
	{
		HMatrix dk = HMatrix::constant(d.power(k), p);
		for (const auto &[s, c] : terms)
		{
			HMatrix term = HMatrix::constant(SparseMatrix::identity(d.rows()), p);
			for (unsigned a : s.parts)
				term = term * derivative(a);
			total = total + c * (term * dk);
		}
	}
	out.equation_value = total;
	return out;
}

} // namespace ndepth
