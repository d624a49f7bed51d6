#pragma once

#include "ndepth/exactmath.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ndepth {

struct BasisElement
{
	std::string name;
	int degree = 0;

	friend bool operator==(const BasisElement &, const BasisElement &) = default;
};

/// Finite-dimensional Z-graded vector space with a named, ordered basis.
class GradedSpace
{
public:
	GradedSpace() = default;
	explicit GradedSpace(std::vector<BasisElement> basis); // throws InputError on duplicate names

	std::size_t dim() const { return basis_.size(); }
	const std::vector<BasisElement> &basis() const { return basis_; }
	const BasisElement &operator[](std::size_t i) const { return basis_.at(i); }
	int degree(std::size_t i) const { return basis_.at(i).degree; }
	const std::string &name(std::size_t i) const { return basis_.at(i).name; }

	std::optional<std::size_t> index_of(const std::string &name) const;
	std::size_t require_index(const std::string &name) const; // throws InputError

	friend bool operator==(const GradedSpace &a, const GradedSpace &b) { return a.basis_ == b.basis_; }

private:
	std::vector<BasisElement> basis_;
	std::unordered_map<std::string, std::size_t> index_;
};

/// V[k]: same basis, an element of degree i in V has degree i - k in V[k].
class ShiftedSpace
{
public:
	ShiftedSpace(GradedSpace base, int shift) : base_(std::move(base)), shift_(shift) {}

	const GradedSpace &base() const { return base_; }
	int shift() const { return shift_; }
	std::size_t dim() const { return base_.dim(); }
	int degree(std::size_t i) const { return base_.degree(i) - shift_; }

	/// The shifted view materialized as an ordinary graded space.
	GradedSpace materialize() const;

private:
	GradedSpace base_;
	int shift_;
};

ShiftedSpace shift(const GradedSpace &v, int k);
ShiftedSpace shift(const ShiftedSpace &v, int k);

/// (-1)^(moving * sum(moved_past)).
int koszul_sign(std::span<const int> degrees_moved_past, int degree_moving);
int koszul_sign(int degree_moved_past, int degree_moving);

/// sum of even-degree dims minus sum of odd-degree dims.
long superdimension(const GradedSpace &v);

GradedSpace direct_sum(const GradedSpace &a, const GradedSpace &b);
/// Basis a_i|b_j in lexicographic order, degrees added.
GradedSpace tensor_product(const GradedSpace &a, const GradedSpace &b);

using Tuple = std::vector<std::size_t>;

/// Degree-homogeneous multilinear map V^{(x)k} -> W given by structure constants.
/// Entries violating deg(out) = sum(deg(in)) + degree are rejected.
class GradedMultiMap
{
public:
	GradedMultiMap(GradedSpace domain, std::size_t arity, GradedSpace codomain, int degree);

	const GradedSpace &domain() const { return domain_; }
	const GradedSpace &codomain() const { return codomain_; }
	std::size_t arity() const { return arity_; }
	int degree() const { return degree_; }

	void add(const Tuple &in, std::size_t out, const Scalar &c);
	void add(const std::vector<std::string> &in, const std::string &out, const Scalar &c);

	SparseVector apply(const Tuple &in) const;
	/// Multilinear extension to a tensor product of sparse vectors.
	SparseVector apply(const std::vector<SparseVector> &args) const;

	const std::map<Tuple, SparseVector> &entries() const { return entries_; }
	bool is_zero() const { return entries_.empty(); }

	/// codomain.dim() x domain.dim()^arity; column of a tuple is its mixed-radix index.
	SparseMatrix matrix() const;
	static GradedMultiMap from_matrix(const GradedSpace &domain, std::size_t arity, const GradedSpace &codomain,
	                                  int degree, const SparseMatrix &m);

	std::size_t column_index(const Tuple &in) const;
	Tuple tuple_of(std::size_t column) const;
	int input_degree(const Tuple &in) const;

	friend bool operator==(const GradedMultiMap &a, const GradedMultiMap &b);

private:
	GradedSpace domain_;
	std::size_t arity_;
	GradedSpace codomain_;
	int degree_;
	std::map<Tuple, SparseVector> entries_;
};

/// f on V  ->  s f (s^{-1})^{(x)k} on V[1]; Koszul signs from the degree -1 suspension.
/// The degree moves from g to g + k - 1.
GradedMultiMap to_shifted(const GradedMultiMap &f);
/// Inverse of to_shifted: input map lives on V[1] (domain/codomain with shifted degrees).
GradedMultiMap to_unshifted(const GradedMultiMap &f_shifted, const GradedSpace &unshifted_domain,
                            const GradedSpace &unshifted_codomain);

/// All tuples of length k over {0..n-1} in lexicographic order.
std::vector<Tuple> all_tuples(std::size_t n, std::size_t k);
std::size_t int_pow(std::size_t base, std::size_t exp);

} // namespace ndepth
