#include "ndepth/operadcount.hpp"

#include "ndepth/error.hpp"
#include "ndepth/trees.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ndepth {

namespace {

long factorial(unsigned n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long power(long base, unsigned e)
{
	long r = 1;
	for (unsigned i = 0; i < e; ++i)
		r *= base;
	return r;
}

// Calls visit(sigma, k) for every normal form in lexicographic order.
void for_each_normal_form(unsigned N, unsigned n,
                          const std::function<void(const std::vector<std::size_t> &, const std::vector<unsigned> &)> &visit)
{
	std::vector<std::size_t> sigma(n);
	std::iota(sigma.begin(), sigma.end(), 0);
	do
	{
		std::vector<unsigned> k(n, 0);
		while (true)
		{
			visit(sigma, k);
			std::size_t i = n;
			while (i > 0 && k[i - 1] + 1 == N)
				k[--i] = 0;
			if (i == 0)
				break;
			++k[i - 1];
		}
	} while (std::next_permutation(sigma.begin(), sigma.end()));
}

} // namespace

int NormalFormWord::degree() const { return static_cast<int>(std::accumulate(k.begin(), k.end(), 0u)); }

std::string NormalFormWord::to_string() const
{
	std::string out;
	for (std::size_t i = 0; i < sigma.size(); ++i)
	{
		if (i)
			out += ' ';
		out += "x" + std::to_string(sigma[i] + 1);
		if (k[i])
			out += "^(" + std::to_string(k[i]) + ")";
	}
	return out;
}

std::vector<NormalFormWord> ndga_normal_forms(unsigned N, unsigned n)
{
	if (N < 1)
		throw InputError("N must be at least 1");
	std::vector<NormalFormWord> out;
	for_each_normal_form(N, n, [&](const auto &sigma, const auto &k) { out.push_back({sigma, k}); });
	return out;
}

std::vector<DimRow> ndga_dims(unsigned N, unsigned n_max)
{
	if (N < 1)
		throw InputError("N must be at least 1");
	std::vector<DimRow> rows;
	for (unsigned n = 1; n <= n_max; ++n)
	{
		DimRow r;
		r.n = n;
		for_each_normal_form(N, n, [&](const auto &, const auto &k) {
			++r.dim;
			r.superdim += std::accumulate(k.begin(), k.end(), 0u) % 2 ? -1 : 1;
		});
		r.closed_dim = factorial(n) * power(N, n);
		if (N % 2 == 1)
			r.closed_superdim = factorial(n);
		else if (n >= 2)
			r.closed_superdim = 0;
		rows.push_back(r);
	}
	return rows;
}

namespace {

using Words = std::map<std::vector<std::size_t>, Scalar>;

Words concat(const Words &a, const Words &b, const Scalar &factor)
{
	Words out;
	for (const auto &[wa, ca] : a)
		for (const auto &[wb, cb] : b)
		{
			auto w = wa;
			w.insert(w.end(), wb.begin(), wb.end());
			out[w] += factor * ca * cb;
		}
	return out;
}

// Rank of the left-normed brackets [..[y_s1, y_s2], .., y_sn] in the tensor algebra,
// generators of the given parities.
std::size_t lie_rank(const std::vector<int> &parity)
{
	const std::size_t n = parity.size();
	std::vector<std::size_t> sigma(n);
	std::iota(sigma.begin(), sigma.end(), 0);
	EchelonBasis span;
	do
	{
		Words acc{{{sigma[0]}, Scalar(1)}};
		int acc_parity = parity[sigma[0]];
		for (std::size_t i = 1; i < n; ++i)
		{
			Words y{{{sigma[i]}, Scalar(1)}};
			int py = parity[sigma[i]];
			Words ab = concat(acc, y, 1);
			Words ba = concat(y, acc, Scalar(acc_parity * py % 2 ? 1 : -1));
			for (const auto &[w, c] : ba)
				ab[w] += c;
			std::erase_if(ab, [](const auto &kv) { return kv.second == 0; });
			acc = std::move(ab);
			acc_parity = (acc_parity + py) % 2;
		}
		SparseVector v;
		for (const auto &[w, c] : acc)
		{
			std::size_t idx = 0;
			for (auto letter : w)
				idx = idx * n + letter;
			add_entry(v, idx, c);
		}
		span.insert(std::move(v));
	} while (std::next_permutation(sigma.begin(), sigma.end()));
	return span.size();
}

} // namespace

std::vector<DimRow> ndgla_dims(unsigned N, unsigned n_max)
{
	if (N < 1)
		throw InputError("N must be at least 1");
	const long evens = (N + 1) / 2, odds = N / 2;
	std::vector<DimRow> rows;
	for (unsigned n = 1; n <= n_max; ++n)
	{
		DimRow r;
		r.n = n;
		// the bracket rank depends only on how many generators are odd
		for (unsigned odd_count = 0; odd_count <= n; ++odd_count)
		{
			long decorations = power(evens, n - odd_count) * power(odds, odd_count);
			if (decorations == 0)
				continue;
			decorations *= factorial(n) / (factorial(odd_count) * factorial(n - odd_count));
			std::vector<int> parity(n, 0);
			std::fill(parity.begin(), parity.begin() + odd_count, 1);
			long rank = static_cast<long>(lie_rank(parity));
			r.dim += decorations * rank;
			r.superdim += (odd_count % 2 ? -1 : 1) * decorations * rank;
		}
		r.closed_dim = factorial(n - 1) * power(N, n);
		if (n >= 2)
			r.closed_superdim = N % 2 ? factorial(n - 1) : 0;
		rows.push_back(r);
	}
	return rows;
}

namespace {

struct Term
{
	char kind = 'x'; // 'x' letter, 'd', 'm'
	int letter = 0;
	std::vector<Term> ch;

	std::string str() const
	{
		if (kind == 'x')
			return "x" + std::to_string(letter);
		if (kind == 'd')
			return "d(" + ch[0].str() + ")";
		return "m(" + ch[0].str() + "," + ch[1].str() + ")";
	}

	int degree() const
	{
		int d = kind == 'd' ? 1 : 0;
		for (const auto &c : ch)
			d += c.degree();
		return d;
	}
};

Term parse_term(const std::string &s, std::size_t &pos)
{
	if (pos >= s.size())
		throw InputError("truncated term '" + s + "'");
	Term t;
	if (s[pos] == 'x')
	{
		++pos;
		std::size_t start = pos;
		while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
			++pos;
		if (start == pos)
			throw InputError("letter without index in '" + s + "'");
		t.letter = std::stoi(s.substr(start, pos - start));
		return t;
	}
	if ((s[pos] != 'd' && s[pos] != 'm') || pos + 1 >= s.size() || s[pos + 1] != '(')
		throw InputError("unexpected character in term '" + s + "'");
	t.kind = s[pos];
	pos += 2;
	t.ch.push_back(parse_term(s, pos));
	if (t.kind == 'm')
	{
		if (pos >= s.size() || s[pos] != ',')
			throw InputError("expected ',' in term '" + s + "'");
		++pos;
		t.ch.push_back(parse_term(s, pos));
	}
	if (pos >= s.size() || s[pos] != ')')
		throw InputError("expected ')' in term '" + s + "'");
	++pos;
	return t;
}

Term parse_term(const std::string &s)
{
	std::size_t pos = 0;
	Term t = parse_term(s, pos);
	if (pos != s.size())
		throw InputError("trailing characters in term '" + s + "'");
	return t;
}

enum class Rule
{
	kill,
	leibniz,
	assoc
};

struct Redex
{
	std::vector<std::size_t> path;
	Rule rule;
};

void collect_redexes(const Term &t, unsigned N, std::vector<std::size_t> &path, std::vector<Redex> &out)
{
	if (t.kind == 'd')
	{
		const Term *cur = &t;
		unsigned chain = 0;
		while (cur->kind == 'd' && chain < N)
		{
			++chain;
			cur = &cur->ch[0];
		}
		if (chain == N)
			out.push_back({path, Rule::kill});
		if (t.ch[0].kind == 'm')
			out.push_back({path, Rule::leibniz});
	}
	if (t.kind == 'm' && t.ch[1].kind == 'm')
		out.push_back({path, Rule::assoc});
	for (std::size_t i = 0; i < t.ch.size(); ++i)
	{
		path.push_back(i);
		collect_redexes(t.ch[i], N, path, out);
		path.pop_back();
	}
}

// Rewrites the subterm at `path`; returns the resulting combination of whole terms.
std::vector<std::pair<Term, int>> apply_rule(const Term &root, const Redex &r)
{
	std::vector<std::pair<Term, int>> pieces;
	std::function<const Term &(const Term &, std::size_t)> at = [&](const Term &t, std::size_t depth) -> const Term & {
		return depth == r.path.size() ? t : at(t.ch[r.path[depth]], depth + 1);
	};
	const Term &sub = at(root, 0);
	switch (r.rule)
	{
	case Rule::kill:
		break;
	case Rule::leibniz:
	{
		const Term &a = sub.ch[0].ch[0];
		const Term &b = sub.ch[0].ch[1];
		Term left{'m', 0, {Term{'d', 0, {a}}, b}};
		Term right{'m', 0, {a, Term{'d', 0, {b}}}};
		pieces.push_back({left, 1});
		pieces.push_back({right, a.degree() % 2 ? -1 : 1});
		break;
	}
	case Rule::assoc:
	{
		const Term &a = sub.ch[0];
		const Term &b = sub.ch[1].ch[0];
		const Term &c = sub.ch[1].ch[1];
		pieces.push_back({Term{'m', 0, {Term{'m', 0, {a, b}}, c}}, 1});
		break;
	}
	}
	std::vector<std::pair<Term, int>> out;
	for (auto &[replacement, sign] : pieces)
	{
		Term whole = root;
		Term *slot = &whole;
		for (auto i : r.path)
			slot = &slot->ch[i];
		*slot = replacement;
		out.push_back({std::move(whole), sign});
	}
	return out;
}

} // namespace

int NdgaRewriter::degree(const std::string &term) { return parse_term(term).degree(); }

TermCombination NdgaRewriter::normalize(const std::string &term, std::mt19937 *rng) const
{
	TermCombination done;
	std::map<std::string, Scalar> pending{{parse_term(term).str(), Scalar(1)}};
	while (!pending.empty())
	{
		auto [text, coeff] = *pending.begin();
		pending.erase(pending.begin());
		if (coeff == 0)
			continue;
		Term t = parse_term(text);
		std::vector<Redex> redexes;
		std::vector<std::size_t> path;
		collect_redexes(t, N_, path, redexes);
		if (redexes.empty())
		{
			done[text] += coeff;
			if (done[text] == 0)
				done.erase(text);
			continue;
		}
		const Redex &r = rng ? redexes[(*rng)() % redexes.size()] : redexes.front();
		for (auto &[next, sign] : apply_rule(t, r))
		{
			auto &slot = pending[next.str()];
			slot += sign * coeff;
		}
	}
	return done;
}

ConfluenceReport ndga_confluence(unsigned N, unsigned n, unsigned max_d, unsigned trials, unsigned seed)
{
	NdgaRewriter rw(N);
	std::mt19937 rng(seed);
	ConfluenceReport report;
	std::vector<std::size_t> letters(n);
	std::iota(letters.begin(), letters.end(), 1);
	for (unsigned u = 0; u <= max_d; ++u)
		for (const auto &tree : enumerate_ub(n, u, n - 1))
		{
			std::string shape = tree.serialize();
			auto perm = letters;
			do
			{
				std::string term;
				std::size_t leaf = 0;
				for (char c : shape)
				{
					if (c == 'u')
						term += 'd';
					else if (c == 'b')
						term += 'm';
					else if (c == '*')
						term += "x" + std::to_string(perm[leaf++]);
					else
						term += c;
				}
				++report.terms_checked;
				TermCombination reference = rw.normalize(term);
				for (unsigned t = 0; t < trials; ++t)
				{
					TermCombination other = rw.normalize(term, &rng);
					if (other != reference && report.confluent)
					{
						report.confluent = false;
						report.witness = term;
						report.first = reference;
						report.second = other;
					}
				}
			} while (std::next_permutation(perm.begin(), perm.end()));
		}
	return report;
}

PowerSeries PowerSeries::x(std::size_t order, const Scalar &scale)
{
	PowerSeries s{std::vector<Scalar>(order + 1, Scalar(0))};
	if (order >= 1)
		s.c[1] = scale;
	return s;
}

PowerSeries PowerSeries::one(std::size_t order)
{
	PowerSeries s{std::vector<Scalar>(order + 1, Scalar(0))};
	s.c[0] = 1;
	return s;
}

PowerSeries PowerSeries::operator*(const PowerSeries &o) const
{
	PowerSeries r{std::vector<Scalar>(c.size(), Scalar(0))};
	for (std::size_t i = 0; i < c.size(); ++i)
		for (std::size_t j = 0; i + j < c.size() && j < o.c.size(); ++j)
			r.c[i + j] += c[i] * o.c[j];
	return r;
}

PowerSeries PowerSeries::operator-(const PowerSeries &o) const
{
	PowerSeries r = *this;
	for (std::size_t i = 0; i < r.c.size() && i < o.c.size(); ++i)
		r.c[i] -= o.c[i];
	return r;
}

PowerSeries PowerSeries::geometric() const
{
	const std::size_t order = c.size() - 1;
	PowerSeries sum = one(order), term = one(order);
	for (std::size_t k = 1; k <= order; ++k)
	{
		term = term * *this;
		for (std::size_t i = 0; i <= order; ++i)
			sum.c[i] += term.c[i];
	}
	return sum;
}

PowerSeries PowerSeries::log_geometric() const
{
	const std::size_t order = c.size() - 1;
	PowerSeries sum{std::vector<Scalar>(order + 1, Scalar(0))}, term = one(order);
	for (std::size_t k = 1; k <= order; ++k)
	{
		term = term * *this;
		for (std::size_t i = 0; i <= order; ++i)
			sum.c[i] += term.c[i] / Scalar(static_cast<long>(k));
	}
	return sum;
}

namespace {

const std::map<SeriesKind, std::string> series_names{{SeriesKind::ndga_linear, "ndga"},
                                                      {SeriesKind::ndga_graded, "ndga-graded"},
                                                      {SeriesKind::ndgla_linear, "ndgla"},
                                                      {SeriesKind::ndgla_graded, "ndgla-graded"}};

} // namespace

std::string to_string(SeriesKind kind) { return series_names.at(kind); }

SeriesKind parse_series_kind(const std::string &text)
{
	for (const auto &[k, name] : series_names)
		if (name == text)
			return k;
	throw InputError("unknown series kind '" + text + "' (expected ndga, ndga-graded, ndgla, ndgla-graded)");
}

bool SeriesReport::pass() const
{
	return std::all_of(rows.begin(), rows.end(), [](const auto &r) { return r.equal(); });
}

SeriesReport series_check(SeriesKind kind, unsigned N, unsigned order)
{
	if (N < 1 || order < 1)
		throw InputError("series_check needs N >= 1 and order >= 1");
	SeriesReport report;
	report.kind = kind;
	report.N = N;
	const std::string Ns = std::to_string(N);
	PowerSeries expected;
	std::vector<DimRow> dims;
	bool graded = kind == SeriesKind::ndga_graded || kind == SeriesKind::ndgla_graded;
	switch (kind)
	{
	case SeriesKind::ndga_linear:
		expected = PowerSeries::x(order, N) * (PowerSeries::x(order, N)).geometric();
		report.closed_form = Ns + "x/(1-" + Ns + "x)";
		dims = ndga_dims(N, order);
		break;
	case SeriesKind::ndga_graded:
		expected = N % 2 ? PowerSeries::x(order) * PowerSeries::x(order).geometric() : PowerSeries::x(order);
		report.closed_form = N % 2 ? "x/(1-x)" : "x";
		dims = ndga_dims(N, order);
		break;
	case SeriesKind::ndgla_linear:
		expected = PowerSeries::x(order, N).log_geometric();
		report.closed_form = "ln(1/(1-" + Ns + "x))";
		dims = ndgla_dims(N, order);
		break;
	case SeriesKind::ndgla_graded:
		expected = N % 2 ? PowerSeries::x(order).log_geometric() : PowerSeries::x(order);
		report.closed_form = N % 2 ? "ln(1/(1-x))" : "x";
		dims = ndgla_dims(N, order);
		break;
	}
	for (const auto &d : dims)
	{
		SeriesRow row;
		row.n = d.n;
		row.computed = Scalar(graded ? d.superdim : d.dim) / Scalar(factorial(d.n));
		row.expected = expected.c[d.n];
		report.rows.push_back(row);
	}
	return report;
}

} // namespace ndepth
