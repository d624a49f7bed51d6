#pragma once

#include "ndepth/exactmath.hpp"
#include "ndepth/tensorcoalg.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace ndepth {

/// s = (s_1, ..., s_n), a finite sequence of naturals; the empty one is the start vertex.
struct Composition
{
	std::vector<unsigned> parts;

	std::size_t length() const { return parts.size(); }
	unsigned size() const; // |s|
	/// |s_{<i}| for 1 <= i <= length() + 1.
	unsigned prefix_size(std::size_t i) const;
	Composition prefix(std::size_t i) const; // s_{<i}
	Composition suffix(std::size_t i) const; // s_{>i}
	std::string to_string() const;           // "()", "(1,0)"

	auto operator<=>(const Composition &) const = default;
};

struct MCTable
{
	unsigned N = 0;
	unsigned M = 0;
	/// c(s, M) for every s reachable by a path of length M; zero values included.
	std::map<Composition, Scalar> entries;
	/// k -> nonzero c(s, M) with M(s) = k and all s_i < N, for 0 <= k <= M - 1.
	std::map<unsigned, std::vector<std::pair<Composition, Scalar>>> assembled;

	Scalar coefficient(const Composition &s) const; // 0 outside the table
	int remaining(const Composition &s) const;      // M(s) = M - |s| - l(s)
};

/// Weighted path sums over the graph on compositions with edges
///   s -> (0, s)     weight 1
///   s -> s          weight (-1)^{|s| + l(s)}
///   s -> s + e_i    weight (-1)^{|s_{<i}| + i - 1}
/// layered by path length. Requires 1 <= N <= M <= 8.
MCTable mc_coefficients(unsigned N, unsigned M);

/// Number of paths of length M from the empty composition to each vertex.
std::map<Composition, long> mc_path_counts(unsigned M);

/// Noncommutative polynomial in the odd letters D (for delta) and e, modulo D^N = 0.
class NCPolynomial
{
public:
	explicit NCPolynomial(unsigned N) : N_(N) {}
	static NCPolynomial letter(unsigned N, char c); // 'D' or 'e'
	static NCPolynomial one(unsigned N);

	const std::map<std::string, Scalar> &terms() const { return terms_; }
	unsigned N() const { return N_; }
	bool is_zero() const { return terms_.empty(); }

	void add(const std::string &word, const Scalar &c);
	NCPolynomial operator+(const NCPolynomial &o) const;
	NCPolynomial operator-(const NCPolynomial &o) const;
	NCPolynomial operator*(const NCPolynomial &o) const;
	friend NCPolynomial operator*(const Scalar &s, const NCPolynomial &p);
	bool operator==(const NCPolynomial &o) const { return terms_ == o.terms_; }

	/// Graded commutator with D on a homogeneous polynomial: D f - (-1)^{|f|} f D.
	NCPolynomial derivative() const;
	std::string to_string() const; // "De + eD + ee", "0"

private:
	unsigned N_;
	std::map<std::string, Scalar> terms_;
};

/// e^{(s)} = e^{(s_1)} ... e^{(s_n)} with e^{(a)} = d^a(e).
NCPolynomial expand_composition(const Composition &s, unsigned N);

struct NCOracleReport
{
	unsigned N = 0;
	unsigned M = 0;
	NCPolynomial lhs{0};          // (D + e)^M
	NCPolynomial rhs{0};          // sum_k sum_{s assembled} c(s, M) e^{(s)} D^k
	NCPolynomial difference{0};   // lhs - rhs
	NCPolynomial rhs_all_parts{0}; // same sum without the s_i < N restriction
	bool equal() const { return difference.is_zero(); }
	bool equal_without_restriction() const { return lhs == rhs_all_parts; }
};

/// Requires N <= 4, M <= 6 and N <= M.
NCOracleReport nc_oracle(unsigned N, unsigned M);

/// Matrix over k[h]/(h^p): c[j] multiplies h^j.
struct HMatrix
{
	std::vector<SparseMatrix> c;

	static HMatrix constant(const SparseMatrix &m, unsigned p);
	static HMatrix zero(std::size_t dim, unsigned p);
	unsigned order() const { return static_cast<unsigned>(c.size()); }
	std::size_t dim() const { return c.front().rows(); }
	bool is_zero() const;

	HMatrix operator+(const HMatrix &o) const;
	HMatrix operator-(const HMatrix &o) const;
	HMatrix operator*(const HMatrix &o) const;
	friend HMatrix operator*(const Scalar &s, const HMatrix &m);
	bool operator==(const HMatrix &o) const { return c == o.c; }
};

struct MCResidual
{
	HMatrix direct_value;   // (delta + e)^M
	HMatrix equation_value; // sum_k c_k(e) delta^k
	bool direct() const { return direct_value.is_zero(); }
	bool via_equation() const { return equation_value.is_zero(); }
	bool agree() const { return direct() == via_equation(); }
};

/// Both sides of the (N, M) equation for the deformation delta + e over k[h]/(h^p).
/// Throws PreconditionError unless delta^N = 0 on the carrier and e vanishes mod h.
MCResidual mc_residual(const Coderivation &delta, const HMatrix &e, unsigned N, unsigned M);

} // namespace ndepth
