#pragma once

#include "ndepth/exactmath.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ndepth {

/// x_{sigma(1)}^{(k_1)} ... x_{sigma(n)}^{(k_n)}, a left comb of decorated leaves.
struct NormalFormWord
{
	std::vector<std::size_t> sigma;
	std::vector<unsigned> k;

	int degree() const;
	std::string to_string() const; // e.g. "x2' x1 x3''"
};

std::vector<NormalFormWord> ndga_normal_forms(unsigned N, unsigned n);

struct DimRow
{
	unsigned n = 0;
	long dim = 0;
	long superdim = 0;
	long closed_dim = 0;
	std::optional<long> closed_superdim; // absent where no closed form is stated
	bool matches() const { return dim == closed_dim && (!closed_superdim || superdim == *closed_superdim); }
};

/// Normal-form counts against n! N^n; superdims against 0 (N even, n >= 2) and n! (N odd).
std::vector<DimRow> ndga_dims(unsigned N, unsigned n_max);
/// Multilinear free graded Lie component per leaf decoration, by the rank of all
/// left-normed brackets inside the tensor algebra; compared with (n-1)! N^n and
/// superdims 0 (N even, n >= 2) and (n-1)! (N odd, n >= 2).
std::vector<DimRow> ndgla_dims(unsigned N, unsigned n_max);

/// Terms over the letters x1..xn: "x1", "d(T)", "m(T,T)".
using TermCombination = std::map<std::string, Scalar>;

/// Rewriting d, m terms towards left-comb normal forms:
///   m(a, m(b, c))  -> m(m(a, b), c)
///   d(m(a, b))     -> m(d a, b) + (-1)^{|a|} m(a, d b)
///   d^N(t)         -> 0
/// Redex choice is leftmost-outermost, or random when an engine is supplied.
class NdgaRewriter
{
public:
	explicit NdgaRewriter(unsigned N) : N_(N) {}

	TermCombination normalize(const std::string &term, std::mt19937 *rng = nullptr) const;
	static int degree(const std::string &term);

private:
	unsigned N_;
};

struct ConfluenceReport
{
	bool confluent = true;
	std::size_t terms_checked = 0;
	std::optional<std::string> witness;  // a term with two different normal forms
	TermCombination first, second;       // those normal forms
};

/// Every d, m term in n distinct letters with at most max_d d's, normalized
/// under `trials` random strategies and compared with the deterministic one.
ConfluenceReport ndga_confluence(unsigned N, unsigned n, unsigned max_d, unsigned trials, unsigned seed = 1);

struct AssRow
{
	unsigned n = 0;
	long free_dim = 0;          // n! C_{n-1}
	long rank_unsigned = 0;     // relations sum_T (T, f)
	long rank_weighted = 0;     // relations from the corestriction of delta^N
	long dim_unsigned = 0;
	long dim_weighted = 0;
	long closed_form = 0;       // n! C_{n-1} for n <= N, (N+1)! (C_N - 1) at n = N + 1
	std::optional<Scalar> binomial_formula; // (1/N!) binom(2N, N) - (N+1)! at n = N + 1
};

/// ass^N(n) for 1 <= n <= min(n_max, N + 1).
std::vector<AssRow> assN_dims(unsigned N, unsigned n_max);

enum class RelationStyle
{
	unsigned_sum, // sum over all trees with coefficient 1
	weighted      // signed firing weights, Koszul signs on A[1]
};

struct QuotientRow
{
	unsigned n = 0;
	unsigned u = 0; // number of d's
	long free_dim = 0;
	long ideal_dim = 0;
	long quotient_dim() const { return free_dim - ideal_dim; }
};

/// Multilinear components of free d, m trees modulo the operadic ideal generated
/// by the depth-N identities (sum over RT_l^{u,b}, u + b = N).
std::vector<QuotientRow> dgass_dims(unsigned N, unsigned n_max, unsigned u_max, RelationStyle style);
/// Same free model modulo associativity, graded Leibniz and d^N = 0.
std::vector<QuotientRow> ndga_quotient_dims(unsigned N, unsigned n_max, unsigned u_max);

/// Truncated power series with exact coefficients; coefficient i multiplies x^i.
struct PowerSeries
{
	std::vector<Scalar> c;

	static PowerSeries x(std::size_t order, const Scalar &scale = 1);
	static PowerSeries one(std::size_t order);
	PowerSeries operator*(const PowerSeries &o) const;
	PowerSeries operator-(const PowerSeries &o) const;
	/// 1 / (1 - f) for f without constant term.
	PowerSeries geometric() const;
	/// ln(1 / (1 - f)) for f without constant term.
	PowerSeries log_geometric() const;
};

enum class SeriesKind
{
	ndga_linear,
	ndga_graded,
	ndgla_linear,
	ndgla_graded
};

std::string to_string(SeriesKind kind);
SeriesKind parse_series_kind(const std::string &text); // throws InputError

struct SeriesRow
{
	unsigned n = 0;
	Scalar computed; // (super)dimension / n!
	Scalar expected; // coefficient of x^n in the closed form
	bool equal() const { return computed == expected; }
};

struct SeriesReport
{
	SeriesKind kind = SeriesKind::ndga_linear;
	unsigned N = 0;
	std::string closed_form;
	std::vector<SeriesRow> rows;
	bool pass() const;
};

SeriesReport series_check(SeriesKind kind, unsigned N, unsigned order);

} // namespace ndepth
